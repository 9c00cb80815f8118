// Copyright 2026 The hvsolve Authors
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

#include "hvsolve/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "hvsolve/native_format.hpp"
#include "hvsolve/xcsp.hpp"

namespace hvsolve {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Loaded {
  NetworkN net;
  InterpRegistry reg;
  std::shared_ptr<std::atomic<std::uint64_t>> eval_faults;
};

std::string read_all(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open " + path);
  buf << file.rdbuf();
  return buf.str();
}

Loaded load(const CliConfig& cfg, std::istream& in) {
  std::string text = read_all(cfg.input, in);
  Loaded out;
  if (detect_format(cfg.input, cfg.format) == InputFormat::kXcsp) {
    auto lowered = lower_to_network(parse_xcsp(text));
    out.net = std::move(lowered.net);
    out.reg = std::move(lowered.reg);
    out.eval_faults = lowered.stats.eval_faults;
  } else {
    auto parsed = parse_native(text);
    out.net = std::move(parsed.net);
    out.reg = std::move(parsed.reg);
  }
  return out;
}

void print_report(const WellFormedReport& report, std::ostream& os) {
  for (const auto& v : report.violations) {
    os << "violation [" << clause_name(v.clause) << "]";
    if (v.constraint) os << " constraint #" << *v.constraint;
    os << ": " << v.message << "\n";
  }
}

void print_stats(const SolveStats& s, std::size_t hidden, const Loaded& l,
                 std::ostream& os) {
  os << "c nodes " << s.nodes << "\n"
     << "c revisions " << s.revisions << "\n"
     << "c arcs " << s.arcs_processed << "\n"
     << "c removed " << s.values_removed << "\n"
     << "c hidden " << hidden << "\n";
  if (l.eval_faults) os << "c eval_faults " << l.eval_faults->load() << "\n";
  os << "c time " << std::fixed << std::setprecision(6) << s.seconds << "\n";
  os.unsetf(std::ios::floatfield);
}

SolveLimits limits_of(const CliConfig& cfg) {
  SolveLimits limits;
  limits.max_nodes = cfg.max_steps;
  return limits;
}

void corrupt(AssignmentN& a, const NetworkN& net) {
  if (net.vars.empty()) return;
  const VarId& v = net.vars.front();
  const Domain& d = net.doms.at(v);
  Value cur = a.at(v);
  // Another domain value if there is one, else one outside the domain.
  Value next = cur + 1;
  for (Value x : d) {
    if (x != cur) {
      next = x;
      break;
    }
  }
  a[v] = next;
}

int cmd_solve(const CliConfig& cfg, const Loaded& l, std::ostream& out,
              std::ostream& err) {
  NResult r = solve_n(l.net, l.reg, limits_of(cfg));
  if (r.status == Status::kSat && cfg.debug_corrupt_solution) {
    corrupt(r.assignment, l.net);
  }
  if (r.status == Status::kSat && cfg.verify &&
      !is_solution_n(r.assignment, l.net, l.reg)) {
    err << "error: verification failed: the assignment is not a solution\n";
    return kExitInternalFault;
  }
  out << status_name(r.status) << "\n";
  if (r.status == Status::kSat) {
    for (const auto& v : l.net.vars) {
      out << v.str() << "=" << r.assignment.at(v) << "\n";
    }
  }
  if (cfg.stats) print_stats(r.stats, r.hidden_vars, l, out);
  switch (r.status) {
    case Status::kSat:
      return kExitSat;
    case Status::kUnsat:
      return kExitUnsat;
    case Status::kUnknown:
      break;
  }
  return kExitOk;
}

int cmd_translate(const Loaded& l, std::ostream& out, std::ostream& err) {
  auto report = check_network_inv_n(l.net, l.reg);
  if (!report.ok()) {
    print_report(report, err);
    return kExitInputError;
  }
  auto bin = translate_csp_n(l.net, l.reg);
  if (!bin) throw ContractError("translation failed on a well-formed network");
  std::size_t hidden = 0;
  out << "variables\n";
  for (const auto& v : bin->vars) {
    bool is_hidden = std::holds_alternative<HVar>(v);
    hidden += is_hidden;
    out << "  " << (is_hidden ? "HVar " : "OVar ") << to_string(v) << " :";
    for (const auto& x : bin->doms.at(v)) out << " " << to_string(x);
    out << "\n";
  }
  out << "constraints\n";
  for (const auto& c : bin->csts) out << "  " << to_string(c) << "\n";
  out << bin->vars.size() << " variables, " << bin->csts.size()
      << " constraints, " << hidden << " hidden\n";
  return kExitOk;
}

int cmd_check(const Loaded& l, std::ostream& out) {
  auto report = check_network_inv_n(l.net, l.reg);
  if (report.ok()) {
    out << "ok: " << l.net.vars.size() << " variables, " << l.net.csts.size()
        << " constraints\n";
    return kExitOk;
  }
  print_report(report, out);
  return kExitInputError;
}

int cmd_oracle(const CliConfig& cfg, const Loaded& l, std::ostream& out,
               std::ostream& err) {
  auto report = check_network_inv_n(l.net, l.reg);
  if (!report.ok()) {
    print_report(report, err);
    return kExitInputError;
  }
  std::vector<AssignmentN> sols;
  try {
    sols = brute_force_solutions(l.net, l.reg, cfg.oracle_cap);
  } catch (const OracleRefused& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  NResult r = solve_n(l.net, l.reg, limits_of(cfg));
  out << "solutions " << sols.size() << "\n";
  out << "solve " << status_name(r.status) << "\n";
  bool agree = false;
  if (r.status == Status::kSat) {
    agree = std::find(sols.begin(), sols.end(), r.assignment) != sols.end();
  } else if (r.status == Status::kUnsat) {
    agree = sols.empty();
  }
  if (r.status == Status::kUnknown) {
    out << "inconclusive\n";
    return kExitOk;
  }
  out << (agree ? "agreement" : "disagreement") << "\n";
  return agree ? kExitOk : kExitInternalFault;
}

}  // namespace

InputFormat detect_format(const std::string& path, InputFormat requested) {
  if (requested != InputFormat::kAuto) return requested;
  const std::string ext = ".xml";
  if (path.size() >= ext.size() &&
      std::equal(ext.rbegin(), ext.rend(), path.rbegin(), [](char a, char b) {
        return a == std::tolower(static_cast<unsigned char>(b));
      })) {
    return InputFormat::kXcsp;
  }
  return InputFormat::kNative;
}

int run(const CliConfig& cfg, std::istream& in, std::ostream& out,
        std::ostream& err) {
  try {
    if (cfg.subcommand == Subcommand::kGen) {
      auto g = gen_random_network(cfg.gen);
      out << emit_native(g.net, g.reg);
      return kExitOk;
    }
    Loaded l = load(cfg, in);
    switch (cfg.subcommand) {
      case Subcommand::kSolve:
        return cmd_solve(cfg, l, out, err);
      case Subcommand::kTranslate:
        return cmd_translate(l, out, err);
      case Subcommand::kCheck:
        return cmd_check(l, out);
      case Subcommand::kOracle:
        return cmd_oracle(cfg, l, out, err);
      case Subcommand::kGen:
        break;
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const IllFormedNetwork& e) {
    err << "error: ill-formed network\n";
    print_report(e.report(), err);
    return kExitInputError;
  } catch (const ContractError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalFault;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalFault;
  }
}

}  // namespace hvsolve
