// Copyright 2026 The Platoon Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PLATOON_CSV_HPP_
#define PLATOON_CSV_HPP_

#include <string>
#include <vector>

namespace platoon {

/// `%.9g` rendering shared by every CSV the project writes.
std::string format_float(double value);

std::vector<std::string> split_csv_line(const std::string & line);

/// Inverse of format_float; "NA" reads as NaN.
double parse_float(const std::string & text);

}  // namespace platoon

#endif  // PLATOON_CSV_HPP_
