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
#include "polysched/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "polysched/config.hpp"
#include "polysched/dependence.hpp"
#include "polysched/error.hpp"
#include "polysched/postprocess.hpp"
#include "polysched/schedule.hpp"
#include "polysched/scheduler.hpp"
#include "polysched/scop.hpp"
#include "polysched/verify.hpp"

namespace polysched::cli {

namespace {

// Error raised while handling a named file; keeps the path for the message.
struct FileError {
  std::string path;
  Error error;
};

struct Options {
  std::string input;
  std::string config;
  std::string deps;
  bool compute_deps = true;
  bool tiling = false;
  std::vector<std::string> params;
  std::string output;
  bool verify = false;
  int64_t seed = 0;
  std::string dump_ilp;
  std::string schedule;
  std::string format = "json";
  size_t budget = 100000;
};

std::string read_text(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw FileError{path, Error(ErrorKind::SchemaError, "cannot read file")};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <typename F>
auto with_file(const std::string &path, F f) {
  try {
    return f(read_text(path));
  } catch (const Error &e) {
    throw FileError{path, e};
  }
}

// Values for names the scop does not declare are dropped with a warning, so
// one command line can drive several kernels.
ParamValues parse_params(const std::vector<std::string> &items, const Scop &scop, std::ostream &err) {
  ParamValues out;
  for (const auto &item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::SchemaError, "--param expects NAME=INT, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    size_t used = 0;
    int64_t v = 0;
    try {
      v = std::stoll(value, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw Error(ErrorKind::SchemaError, "--param " + name + ": not an integer");
    if (std::find(scop.parameters.begin(), scop.parameters.end(), name) == scop.parameters.end()) {
      err << "polysched: warning: ignoring unknown parameter '" << name << "'\n";
      continue;
    }
    out[name] = v;
  }
  return out;
}

std::vector<Dependence> load_deps(const Options &o, const Scop &scop) {
  if (!o.deps.empty()) return with_file(o.deps, [&](const std::string &t) { return parse_deps(t, scop); });
  if (!o.compute_deps) throw Error(ErrorKind::SchemaError, "--compute-dependencies=false needs --deps");
  return compute_dependences(scop);
}

class Emitter {
 public:
  Emitter(const Options &o, std::ostream &out) : path_(o.output), out_(out) {}
  void write(const std::string &text) {
    if (path_.empty()) {
      out_ << text;
      if (!text.empty() && text.back() != '\n') out_ << "\n";
      return;
    }
    std::ofstream f(path_);
    f << text;
    if (!text.empty() && text.back() != '\n') f << "\n";
    if (!f) throw FileError{path_, Error(ErrorKind::SchemaError, "cannot write file")};
  }

 private:
  std::string path_;
  std::ostream &out_;
};

int report(const Scop &scop, const LegalityReport &r, std::ostream &to) {
  to << report_to_json(scop, r);
  return r.legal() ? kOk : kIllegal;
}

int cmd_schedule(const Options &o, std::ostream &out, std::ostream &err) {
  Scop scop = with_file(o.input, [](const std::string &t) { return parse_scop(t); });
  Config config = o.config.empty() ? Config{} : with_file(o.config, [](const std::string &t) { return parse_config(t); });
  std::vector<Dependence> deps = load_deps(o, scop);
  const ParamValues params = parse_params(o.params, scop, err);

  SchedulerOptions sopts;
  std::ofstream dump;
  if (!o.dump_ilp.empty()) {
    dump.open(o.dump_ilp);
    if (!dump) throw FileError{o.dump_ilp, Error(ErrorKind::SchemaError, "cannot write file")};
    sopts.ilp_dump = &dump;
  }
  Schedule sched = schedule(scop, deps, config, sopts);
  if (o.tiling) {
    if (config.tiling)
      sched = postprocess(scop, std::move(sched), *config.tiling, deps);
    else
      err << "polysched: warning: --tiling given but the config has no tiling section\n";
  }
  for (const auto &w : sched.warnings) err << "polysched: warning: " << w << "\n";

  Emitter(o, out).write(emit_schedule(scop, sched, o.format == "text" ? ScheduleFormat::MatrixText : ScheduleFormat::Json));
  if (!o.verify) return kOk;
  EnumerateOptions eopts;
  eopts.budget = o.budget;
  LegalityReport r = verify_legality(scop, sched, load_deps(o, scop), params, eopts);
  if (!r.legal()) err << "polysched: verification failed\n";
  return report(scop, r, err) == kOk ? kOk : kIllegal;
}

int cmd_deps(const Options &o, std::ostream &out) {
  Scop scop = with_file(o.input, [](const std::string &t) { return parse_scop(t); });
  Emitter(o, out).write(deps_to_json(compute_dependences(scop)));
  return kOk;
}

Schedule load_schedule(const Options &o, const Scop &scop) {
  if (o.schedule.empty()) return initial_schedule(scop);
  return with_file(o.schedule, [&](const std::string &t) { return parse_schedule(t, scop); });
}

int cmd_verify(const Options &o, std::ostream &out, std::ostream &err) {
  Scop scop = with_file(o.input, [](const std::string &t) { return parse_scop(t); });
  if (o.schedule.empty()) throw Error(ErrorKind::SchemaError, "verify needs --schedule");
  Schedule sched = load_schedule(o, scop);
  EnumerateOptions eopts;
  eopts.budget = o.budget;
  LegalityReport r = verify_legality(scop, sched, load_deps(o, scop), parse_params(o.params, scop, err), eopts);
  std::ostringstream text;
  const int code = report(scop, r, text);
  Emitter(o, out).write(text.str());
  return code;
}

int cmd_print(const Options &o, std::ostream &out, std::ostream &err) {
  Scop scop = with_file(o.input, [](const std::string &t) { return parse_scop(t); });
  Schedule sched = load_schedule(o, scop);
  EnumerateOptions eopts;
  eopts.budget = o.budget;
  InstanceTrace trace = enumerate_dates(scop, sched, parse_params(o.params, scop, err), eopts);
  Emitter(o, out).write(print_loops(trace, scop, &sched));
  return kOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigInfeasible:
    case ErrorKind::ConflictingPlan:
    case ErrorKind::IllegalDistribution:
      return kInfeasible;
    default:
      return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Configurable iterative polyhedral scheduler", "polysched"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App *sub) { sub->add_option("input", o.input, "Mini-SCoP JSON file")->required(); };
  auto add_params = [&](CLI::App *sub) {
    sub->add_option("--param", o.params, "Parameter value NAME=INT (repeatable, default 6)");
    sub->add_option("--budget", o.budget, "Maximum enumerated points per set");
  };
  auto add_deps = [&](CLI::App *sub) {
    sub->add_option("--deps", o.deps, "Pre-computed dependence JSON");
    sub->add_option("--compute-dependencies", o.compute_deps, "Compute dependences from the accesses")
        ->default_val(true);
  };

  CLI::App *sched = app.add_subcommand("schedule", "Compute a schedule");
  add_input(sched);
  add_deps(sched);
  add_params(sched);
  sched->add_option("--config", o.config, "Config JSON");
  sched->add_option("--tiling", o.tiling, "Apply tiling from the config")->default_val(false);
  sched->add_flag("--verify", o.verify, "Verify the result by enumeration");
  sched->add_option("--seed", o.seed, "Ignored; scheduling is deterministic");
  sched->add_option("--dump-ilp", o.dump_ilp, "Write every dimension ILP to this file");
  sched->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  sched->add_option("--output,-o", o.output, "Output file (default stdout)");

  CLI::App *deps = app.add_subcommand("deps", "Emit the dependences");
  add_input(deps);
  deps->add_option("--output,-o", o.output, "Output file (default stdout)");

  CLI::App *verify = app.add_subcommand("verify", "Check a schedule by enumeration");
  add_input(verify);
  add_deps(verify);
  add_params(verify);
  verify->add_option("--schedule", o.schedule, "Schedule JSON")->required();
  verify->add_option("--output,-o", o.output, "Output file (default stdout)");

  CLI::App *print = app.add_subcommand("print", "Print a loop sketch of a schedule");
  add_input(print);
  add_params(print);
  print->add_option("--schedule", o.schedule, "Schedule JSON (default: the original schedule)");
  print->add_option("--output,-o", o.output, "Output file (default stdout)");

  std::vector<const char *> argv{"polysched"};
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sched) return cmd_schedule(o, out, err);
    if (*deps) return cmd_deps(o, out);
    if (*verify) return cmd_verify(o, out, err);
    return cmd_print(o, out, err);
  } catch (const FileError &e) {
    err << "polysched: " << e.path << ": " << e.error.what() << "\n";
    return exit_code(e.error.kind());
  } catch (const Error &e) {
    err << "polysched: " << o.input << ": " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace polysched::cli
