// Copyright 2026 The qsdprobe Authors
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

#include "qsdprobe/csv.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace qsdprobe {

namespace {

char g_pending[4096] = {0};

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

const char* pending_output_path() { return g_pending; }

std::string render_csv(const std::vector<ObservableSeries>& series,
                       const std::vector<std::string>& metadata) {
  std::string out;
  for (const auto& m : metadata) out += "# " + m + "\n";
  out += "t";
  for (const auto& s : series) out += "," + s.name + "," + s.name + "_stderr";
  out += "\n";
  if (series.empty()) return out;

  const TimeGrid& grid = series.front().grid;
  for (const auto& s : series) {
    if (!(s.grid == grid) || s.values.size() != grid.size() || s.std_error.size() != grid.size()) {
      throw DimensionMismatch("series '" + s.name + "' does not share the common grid");
    }
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out += number(grid.time(k));
    for (const auto& s : series) {
      out += "," + number(s.values[k]) + "," + number(s.std_error[k]);
    }
    out += "\n";
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".part";
  if (tmp.size() < sizeof g_pending) std::memcpy(g_pending, tmp.c_str(), tmp.size() + 1);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      g_pending[0] = '\0';
      throw Error("cannot open " + tmp + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
      g_pending[0] = '\0';
      std::remove(tmp.c_str());
      throw Error("failed writing " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    g_pending[0] = '\0';
    std::remove(tmp.c_str());
    throw Error("cannot move output into place at " + path);
  }
  g_pending[0] = '\0';
}

void export_csv(const std::vector<ObservableSeries>& series, const std::string& path,
                const std::vector<std::string>& metadata) {
  write_file_atomic(path, render_csv(series, metadata));
}

}  // namespace qsdprobe
