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
//
// Test fixtures and oracles that share no code with the solver beyond the
// data types: constraint semantics are re-evaluated here from scratch.

#ifndef HVSOLVE_TESTS_SUPPORT_FIXTURES_HPP_
#define HVSOLVE_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hvsolve/binary_solver.hpp"
#include "hvsolve/core.hpp"
#include "hvsolve/hve.hpp"

namespace hvsolve::testing {

struct Fixture {
  NetworkN net;
  InterpRegistry reg;
};

struct BinFixture {
  NetworkBin net;
  InterpRegistry reg;
};

// Six 0/1 variables x1..x6, four linear n-ary constraints c1..c4 and the
// basic constraint c5 : x1 >= x6. Predicates are plain lambdas.
Fixture six_var();
// Same with x2 restricted to {1}.
Fixture six_var_x2_is_1();
// c5 replaced by the conjunction x1 >= x6 and x1 < x6.
Fixture six_var_unsat();
// Only c1 (x1 + x2 + x6 = 1), x2 restricted to {1}.
Fixture six_var_c1_only_x2_is_1();

AssignmentN six_var_solution();

// The published tuple sets of the four dual variables, in lexicographic
// order.
std::vector<std::vector<Value>> six_var_dual(int constraint);

// Binary network over OVar variables v0.. with RawV domains drawn from
// 0..5 and basic constraints with random extension tables. Variables left
// out of every constraint are dropped.
BinFixture random_binary_network(std::uint64_t seed, std::size_t max_vars = 6,
                                 std::size_t max_domain = 4,
                                 double density = 0.6, double looseness = 0.6);

// All solutions by depth-first enumeration in declared order.
std::vector<AssignmentN> enumerate_n(const NetworkN& net,
                                     const InterpRegistry& reg);
std::vector<AssignmentBin> enumerate_bin(const NetworkBin& net,
                                         const InterpRegistry& reg);

// Independent binary solution checker.
bool bin_solution_ok(const AssignmentBin& a, const NetworkBin& net,
                     const InterpRegistry& reg);

std::string data_path(const std::string& name);
std::string read_file(const std::string& path);

}  // namespace hvsolve::testing

#endif  // HVSOLVE_TESTS_SUPPORT_FIXTURES_HPP_
