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
// Line-oriented native instance format:
//
//   # comment (from '#' to the end of the line)
//   var <name> <v1> <v2> ...            explicit values
//   var <name> <lo>..<hi>               inclusive range
//   table <name> <arity> <row>;<row>;... rows of space-separated integers
//   con <name> ext <table> <scope...>
//   con <name> int <expr> <scope...>    expr in prefix syntax over X0..Xk-1
//
// Names are [A-Za-z_][A-Za-z0-9_]*. Variables and tables must be declared
// before use. A two-variable constraint becomes a basic constraint named
// <name>; a wider one becomes Nary(<table>, k, scope) for `ext` and
// Nary(<name>, k, scope) for `int`.

#ifndef HVSOLVE_NATIVE_FORMAT_HPP_
#define HVSOLVE_NATIVE_FORMAT_HPP_

#include <string>
#include <string_view>

#include "hvsolve/core.hpp"
#include "hvsolve/parse_error.hpp"

namespace hvsolve {

struct ParsedNetwork {
  NetworkN net;
  InterpRegistry reg;
};

// Throws ParseError. The network is not checked for well-formedness.
ParsedNetwork parse_native(std::string_view text);

// Normal-form printer. Throws ContractError when a constraint cannot be
// expressed (unresolved, an intention without source text, or an intention
// operator shared by several constraints).
std::string emit_native(const NetworkN& net, const InterpRegistry& reg);

}  // namespace hvsolve

#endif  // HVSOLVE_NATIVE_FORMAT_HPP_
