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

#include <cstring>
#include <iostream>

#include "qsdprobe/validation.hpp"

int main(int argc, char** argv) {
  qsdprobe::ValidationOptions options;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--verbose") == 0) options.log = &std::cerr;
  }
  bool ok = true;
  for (int id = 1; id <= qsdprobe::kCriterionCount; ++id) {
    const qsdprobe::CriterionResult r = qsdprobe::run_criterion(id, options);
    std::cout << format_result(r) << std::endl;
    ok = ok && r.passed;
  }
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << std::endl;
  return ok ? 0 : 1;
}
