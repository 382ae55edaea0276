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
#include "json_util.hpp"

#include <sstream>

namespace polysched::detail {

Json parse_json(const std::string &text, const char *what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw Error(ErrorKind::SchemaError, std::string(what) + ": " + e.what());
  }
}

namespace {

bool is_flat(const Json &v) {
  for (const auto &e : v)
    if (e.is_structured()) return false;
  return true;
}

void write(std::ostringstream &os, const Json &v, int indent) {
  std::string pad(indent + 2, ' ');
  if (v.is_object() && !v.empty()) {
    os << "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(it.key()).dump() << ": ";
      write(os, it.value(), indent + 2);
    }
    os << "\n" << std::string(indent, ' ') << "}";
  } else if (v.is_array() && !v.empty() && !is_flat(v)) {
    os << "[\n";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) os << ",\n";
      os << pad;
      write(os, v[i], indent + 2);
    }
    os << "\n" << std::string(indent, ' ') << "]";
  } else if (v.is_array()) {
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].dump();
    os << "]";
  } else {
    os << v.dump();
  }
}

}  // namespace

std::string dump(const Json &value) {
  std::ostringstream os;
  write(os, value, 0);
  os << "\n";
  return os.str();
}

const Json &require(const Json &obj, const char *key, const std::string &where) {
  if (!obj.is_object()) throw Error(ErrorKind::SchemaError, where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::SchemaError, where + ": missing field '" + key + "'");
  return *it;
}

int64_t as_int(const Json &v, const std::string &where) {
  if (!v.is_number_integer()) throw Error(ErrorKind::SchemaError, where + ": expected an integer");
  return v.get<int64_t>();
}

std::string as_string(const Json &v, const std::string &where) {
  if (!v.is_string()) throw Error(ErrorKind::SchemaError, where + ": expected a string");
  return v.get<std::string>();
}

IntRow as_row(const Json &v, const std::string &where) {
  if (!v.is_array()) throw Error(ErrorKind::SchemaError, where + ": expected an array of integers");
  IntRow row;
  for (const auto &e : v) row.push_back(as_int(e, where));
  return row;
}

std::vector<std::string> as_strings(const Json &v, const std::string &where) {
  if (!v.is_array()) throw Error(ErrorKind::SchemaError, where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto &e : v) out.push_back(as_string(e, where));
  return out;
}

void reject_unknown_keys(const Json &obj, std::initializer_list<const char *> allowed, const std::string &where) {
  if (!obj.is_object()) throw Error(ErrorKind::SchemaError, where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char *a : allowed) known = known || it.key() == a;
    if (!known) throw Error(ErrorKind::SchemaError, where + ": unknown key '" + it.key() + "'");
  }
}

Json poly_rows_to_json(const std::vector<PolyRow> &rows) {
  Json out = Json::array();
  for (const auto &r : rows) {
    Json j;
    j["rel"] = r.rel == RowRel::Equal ? "=" : ">=";
    j["row"] = r.coef;
    out.push_back(j);
  }
  return out;
}

std::vector<PolyRow> poly_rows_from_json(const Json &v, size_t width, const std::string &where) {
  if (!v.is_array()) throw Error(ErrorKind::SchemaError, where + ": expected an array of relations");
  std::vector<PolyRow> rows;
  for (size_t i = 0; i < v.size(); ++i) {
    std::string at = where + "[" + std::to_string(i) + "]";
    PolyRow r;
    if (v[i].is_array()) {
      r.coef = as_row(v[i], at);
    } else {
      reject_unknown_keys(v[i], {"rel", "row"}, at);
      std::string rel = as_string(require(v[i], "rel", at), at + ".rel");
      if (rel == "=" || rel == "==") r.rel = RowRel::Equal;
      else if (rel != ">=") throw Error(ErrorKind::SchemaError, at + ": rel must be \">=\" or \"=\"");
      r.coef = as_row(require(v[i], "row", at), at + ".row");
    }
    if (r.coef.size() != width)
      throw Error(ErrorKind::DimensionMismatch, at + ": row has " + std::to_string(r.coef.size()) +
                                                    " entries, expected " + std::to_string(width));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace polysched::detail
