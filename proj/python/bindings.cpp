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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>

#include "polysched/config.hpp"
#include "polysched/dependence.hpp"
#include "polysched/error.hpp"
#include "polysched/postprocess.hpp"
#include "polysched/schedule.hpp"
#include "polysched/scheduler.hpp"
#include "polysched/scop.hpp"
#include "polysched/verify.hpp"

namespace py = pybind11;
using namespace polysched;

namespace {

std::vector<Dependence> deps_for(const Scop &scop, const std::optional<std::string> &deps_json) {
  return deps_json ? parse_deps(*deps_json, scop) : compute_dependences(scop);
}

Schedule schedule_for(const Scop &scop, const std::optional<std::string> &schedule_json) {
  return schedule_json ? parse_schedule(*schedule_json, scop) : initial_schedule(scop);
}

EnumerateOptions with_budget(size_t budget) {
  EnumerateOptions o;
  o.budget = budget;
  return o;
}

}  // namespace

PYBIND11_MODULE(_polysched, m) {
  m.doc() = "Configurable iterative polyhedral scheduler. Documents are passed as JSON text.";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error &e) {
      py::tuple args = py::make_tuple(to_string(e.kind()), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def(
      "normalize_scop", [](const std::string &scop) { return scop_to_json(parse_scop(scop)); }, py::arg("scop"),
      "Parses and re-emits a Mini-SCoP document.");

  m.def(
      "dependences", [](const std::string &scop) { return deps_to_json(compute_dependences(parse_scop(scop))); },
      py::arg("scop"));

  m.def(
      "schedule",
      [](const std::string &scop_json, const std::optional<std::string> &config_json,
         const std::optional<std::string> &deps_json, bool tiling, const std::string &format) {
        Scop scop = parse_scop(scop_json);
        Config config = config_json ? parse_config(*config_json) : Config{};
        auto deps = deps_for(scop, deps_json);
        Schedule s;
        {
          py::gil_scoped_release release;
          s = polysched::schedule(scop, deps, config);
          if (tiling && config.tiling) s = postprocess(scop, std::move(s), *config.tiling, deps);
        }
        return emit_schedule(scop, s, format == "text" ? ScheduleFormat::MatrixText : ScheduleFormat::Json);
      },
      py::arg("scop"), py::arg("config") = py::none(), py::arg("deps") = py::none(), py::arg("tiling") = false,
      py::arg("format") = "json");

  m.def(
      "verify",
      [](const std::string &scop_json, const std::string &schedule_json, const std::map<std::string, int64_t> &params,
         const std::optional<std::string> &deps_json, size_t budget) {
        Scop scop = parse_scop(scop_json);
        Schedule s = parse_schedule(schedule_json, scop);
        auto deps = deps_for(scop, deps_json);
        return report_to_json(scop, verify_legality(scop, s, deps, params, with_budget(budget)));
      },
      py::arg("scop"), py::arg("schedule"), py::arg("params") = std::map<std::string, int64_t>{},
      py::arg("deps") = py::none(), py::arg("budget") = 100000);

  m.def(
      "print_loops",
      [](const std::string &scop_json, const std::optional<std::string> &schedule_json,
         const std::map<std::string, int64_t> &params, size_t budget) {
        Scop scop = parse_scop(scop_json);
        Schedule s = schedule_for(scop, schedule_json);
        return polysched::print_loops(enumerate_dates(scop, s, params, with_budget(budget)), scop, &s);
      },
      py::arg("scop"), py::arg("schedule") = py::none(), py::arg("params") = std::map<std::string, int64_t>{},
      py::arg("budget") = 100000);

  m.def(
      "contiguity_coefficients",
      [](const std::string &scop_json, size_t stmt) {
        return contiguity_coefficients(parse_scop(scop_json).statements.at(stmt));
      },
      py::arg("scop"), py::arg("statement"));
  m.def(
      "blf_coefficients",
      [](const std::string &scop_json, size_t stmt) { return blf_coefficients(parse_scop(scop_json).statements.at(stmt)); },
      py::arg("scop"), py::arg("statement"));
}
