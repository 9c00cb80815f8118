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

#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "hvsolve/cli.hpp"

int main(int argc, char** argv) {
  using hvsolve::InputFormat;
  using hvsolve::Subcommand;

  hvsolve::CliConfig cfg;
  CLI::App app{"hvsolve: n-ary CSP solver via the hidden variable encoding"};
  app.require_subcommand(1);

  const std::map<std::string, InputFormat> formats{
      {"auto", InputFormat::kAuto},
      {"xcsp", InputFormat::kXcsp},
      {"native", InputFormat::kNative}};
  std::uint64_t max_steps = 0;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "instance file, - for stdin")
        ->required();
    sub->add_option("--format", cfg.format, "auto, xcsp or native")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  auto add_solving = [&](CLI::App* sub) {
    sub->add_option("--max-steps", max_steps,
                    "give up with UNKNOWN after this many search nodes");
  };

  auto* solve = app.add_subcommand("solve", "solve an instance");
  add_input(solve);
  add_solving(solve);
  solve->add_flag("--stats", cfg.stats, "print search statistics");
  solve->add_flag("--verify", cfg.verify,
                  "check the solution before printing it");
  solve->add_flag("--debug-corrupt-solution", cfg.debug_corrupt_solution)
      ->group("");

  auto* translate = app.add_subcommand(
      "translate", "print the binary hidden variable encoding");
  add_input(translate);

  auto* check = app.add_subcommand("check", "report well-formedness");
  add_input(check);

  auto* oracle = app.add_subcommand(
      "oracle", "cross-check the solver against exhaustive enumeration");
  add_input(oracle);
  add_solving(oracle);
  oracle->add_option("--oracle-cap", cfg.oracle_cap,
                     "refuse above this many total assignments");

  auto* gen = app.add_subcommand("gen", "write a random native instance");
  gen->add_option("--seed", cfg.gen.seed, "random seed");
  gen->add_option("--max-vars", cfg.gen.vars.hi, "upper bound on variables");
  gen->add_option("--max-domain", cfg.gen.domain_size.hi,
                  "upper bound on domain size");
  gen->add_option("--max-constraints", cfg.gen.constraints.hi,
                  "upper bound on constraints");
  gen->add_option("--max-arity", cfg.gen.arity.hi, "upper bound on arity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hvsolve::kExitInputError;
  }

  if (*solve) cfg.subcommand = Subcommand::kSolve;
  if (*translate) cfg.subcommand = Subcommand::kTranslate;
  if (*check) cfg.subcommand = Subcommand::kCheck;
  if (*oracle) cfg.subcommand = Subcommand::kOracle;
  if (*gen) cfg.subcommand = Subcommand::kGen;
  if (solve->count("--max-steps") + oracle->count("--max-steps") > 0) {
    cfg.max_steps = max_steps;
  }
  return hvsolve::run(cfg, std::cin, std::cout, std::cerr);
}
