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

#ifndef PLATOON_ERRORS_HPP_
#define PLATOON_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace platoon {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Geometry makes a kinematic relation singular (e.g. 2L - W tan(delta) <= 0).
class DegenerateGeometry : public Error
{
public:
  using Error::Error;
};

/// Non-finite or otherwise unusable command input.
class InvalidCommand : public Error
{
public:
  using Error::Error;
};

/// Scenario document could not be read. `field` is the JSON path of the
/// offending entry when known, `line` the 1-based line for syntax errors (0 otherwise).
class ParseError : public Error
{
public:
  ParseError(const std::string & what, std::string field, std::size_t line = 0)
  : Error(what), field_(std::move(field)), line_(line)
  {
  }

  const std::string & field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string field_;
  std::size_t line_;
};

/// A scenario parsed but violates an invariant.
class ValidationError : public Error
{
public:
  using Error::Error;
};

class DegenerateTrace : public Error
{
public:
  using Error::Error;
};

class MismatchedVehicles : public Error
{
public:
  using Error::Error;
};

}  // namespace platoon

#endif  // PLATOON_ERRORS_HPP_
