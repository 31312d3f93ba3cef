#pragma once

// Program files:
//
//   states: 1 2 3
//   atom x = {(1,2)}
//   test p = {(1,1)}
//   pre: p
//   post: q | !p
//   invariant: p          # one per annotated loop, in source order
//   program:
//     while p do x od
//
// Everything after `program:` (on the same line and below) is the program.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kad/hoare.hpp"

namespace kad {

struct ProgramFile {
  Bindings bindings;
  Program program;
  std::optional<TestExpr> pre;
  std::optional<TestExpr> post;
  std::vector<TestExpr> invariants;
};

/// Throws ParseError with the offending line.
ProgramFile parse_program_file(std::string_view text);
/// As parse_program_file, with the path prefixed to errors.
ProgramFile load_program_file(const std::string &path);

} // namespace kad
