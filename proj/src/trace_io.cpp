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

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "platoon/csv.hpp"
#include "platoon/engine.hpp"

namespace platoon {

const char * const kTraceCsvHeader =
  "t,vehicle_id,x,y,psi,v_actual,vx_cmd,delta_cmd,vx_hat,vy_hat,omega_hat,d_measure,alpha,e_psi,e_y,"
  "obs_valid";

std::string format_float(double value)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string & line)
{
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

double parse_float(const std::string & text)
{
  if (text == "NA") return std::nan("");
  errno = 0;
  char * end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw Error("csv: malformed number '" + text + "'");
  }
  return value;
}

void write_trace_csv(const TraceLog & trace, std::ostream & out)
{
  out << kTraceCsvHeader << '\n';
  for (const auto & r : trace.records) {
    out << format_float(r.t) << ',' << r.vehicle_id << ',' << format_float(r.x) << ','
        << format_float(r.y) << ',' << format_float(r.psi) << ',' << format_float(r.v_actual) << ','
        << format_float(r.vx_cmd) << ',' << format_float(r.delta_cmd) << ','
        << format_float(r.vx_hat) << ',' << format_float(r.vy_hat) << ','
        << format_float(r.omega_hat) << ',' << format_float(r.d_measure) << ','
        << format_float(r.alpha) << ',' << format_float(r.e_psi) << ',' << format_float(r.e_y)
        << ',' << (r.obs_valid ? 1 : 0) << '\n';
  }
}

void write_trace_csv(const TraceLog & trace, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing: " + std::strerror(errno));
  write_trace_csv(trace, out);
  out.flush();
  if (!out) throw Error("write to " + path.string() + " failed");
}

std::vector<TraceRecord> read_trace_csv(std::istream & in)
{
  std::string line;
  if (!std::getline(in, line)) throw Error("trace csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceCsvHeader) throw Error("trace csv: unexpected header");

  std::vector<TraceRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 16) {
      throw Error("trace csv: line " + std::to_string(line_no) + " has " + std::to_string(f.size()) +
                  " fields, expected 16");
    }
    TraceRecord r;
    r.t = parse_float(f[0]);
    r.vehicle_id = f[1];
    r.x = parse_float(f[2]);
    r.y = parse_float(f[3]);
    r.psi = parse_float(f[4]);
    r.v_actual = parse_float(f[5]);
    r.vx_cmd = parse_float(f[6]);
    r.delta_cmd = parse_float(f[7]);
    r.vx_hat = parse_float(f[8]);
    r.vy_hat = parse_float(f[9]);
    r.omega_hat = parse_float(f[10]);
    r.d_measure = parse_float(f[11]);
    r.alpha = parse_float(f[12]);
    r.e_psi = parse_float(f[13]);
    r.e_y = parse_float(f[14]);
    r.obs_valid = f[15] == "1";
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<TraceRecord> read_trace_csv(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + ": " + std::strerror(errno));
  return read_trace_csv(in);
}

}  // namespace platoon
