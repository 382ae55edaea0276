/**
 * Copyright 2026 The polysched Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef POLYSCHED_TESTS_SUPPORT_CORPUS_HPP_
#define POLYSCHED_TESTS_SUPPORT_CORPUS_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polysched/scop.hpp"

namespace polysched::testing {

inline std::string read_file(const std::string &path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string corpus_path(const std::string &name) {
  return std::string(POLYSCHED_CORPUS_DIR) + "/" + name + ".scop.json";
}

inline Scop load_kernel(const std::string &name) { return parse_scop(read_file(corpus_path(name))); }

/// Kernel names in the corpus directory, sorted.
inline std::vector<std::string> corpus_kernels() {
  std::vector<std::string> names;
  for (const auto &e : std::filesystem::directory_iterator(POLYSCHED_CORPUS_DIR)) {
    std::string f = e.path().filename().string();
    const std::string suffix = ".scop.json";
    if (f.size() > suffix.size() && f.compare(f.size() - suffix.size(), suffix.size(), suffix) == 0)
      names.push_back(f.substr(0, f.size() - suffix.size()));
  }
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace polysched::testing

#endif  // POLYSCHED_TESTS_SUPPORT_CORPUS_HPP_
