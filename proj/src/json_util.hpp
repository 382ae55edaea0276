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
#ifndef POLYSCHED_SRC_JSON_UTIL_HPP_
#define POLYSCHED_SRC_JSON_UTIL_HPP_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"
#include "polysched/error.hpp"
#include "polysched/scop.hpp"

namespace polysched::detail {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string &text, const char *what);

/// Pretty printer that keeps arrays of scalars on one line.
std::string dump(const Json &value);

const Json &require(const Json &obj, const char *key, const std::string &where);
int64_t as_int(const Json &v, const std::string &where);
std::string as_string(const Json &v, const std::string &where);
IntRow as_row(const Json &v, const std::string &where);
std::vector<std::string> as_strings(const Json &v, const std::string &where);
void reject_unknown_keys(const Json &obj, std::initializer_list<const char *> allowed, const std::string &where);

Json poly_rows_to_json(const std::vector<PolyRow> &rows);
std::vector<PolyRow> poly_rows_from_json(const Json &v, size_t width, const std::string &where);

}  // namespace polysched::detail

#endif  // POLYSCHED_SRC_JSON_UTIL_HPP_
