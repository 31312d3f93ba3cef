#include <gtest/gtest.h>

#include "kad/program_io.hpp"

using namespace kad;

namespace {

std::string data(const char *name) { return std::string(KADTK_TEST_DATA) + "/" + name; }

std::size_t error_line(const std::string &text) {
  try {
    parse_program_file(text);
  } catch (const ParseError &e) {
    return e.line();
  }
  return 0;
}

} // namespace

TEST(ProgramIo, LoadsCounter) {
  const ProgramFile f = load_program_file(data("counter.prog"));
  EXPECT_EQ(f.bindings.space.size(), 3u);
  EXPECT_EQ(f.bindings.atoms.size(), 1u);
  EXPECT_EQ(f.bindings.tests.size(), 3u);
  EXPECT_EQ(f.program, parse_program("while !at3 do step od"));
  ASSERT_TRUE(f.pre && f.post);
  EXPECT_EQ(*f.pre, TestExpr::id("start"));
  ASSERT_EQ(f.invariants.size(), 1u);

  std::vector<Rel> inv;
  for (const auto &i : f.invariants)
    inv.push_back(denote(i, f.bindings));
  const VcResult r =
      generate_vcs(f.program, denote(*f.pre, f.bindings), denote(*f.post, f.bindings), f.bindings, inv);
  EXPECT_TRUE(r.valid());
}

TEST(ProgramIo, LoadsMidWithProgramOnSameLine) {
  const ProgramFile f = load_program_file(data("mid.prog"));
  EXPECT_EQ(f.program, Program::seq(Program::atom("x"), Program::atom("y")));
  EXPECT_FALSE(f.pre.has_value());
  EXPECT_TRUE(f.invariants.empty());
  const Bindings &b = f.bindings;
  EXPECT_TRUE(holds({b.tests.at("p"), f.program, b.tests.at("q")}, b));
}

TEST(ProgramIo, ErrorsNameTheLine) {
  EXPECT_EQ(error_line("atom x = {}\n"), 1u);                                  // before states
  EXPECT_EQ(error_line("states: 1 2\natom x = {(1,3)}\nprogram: x\n"), 2u);    // unknown state
  EXPECT_EQ(error_line("states: 1 2\ntest t = {(1,2)}\nprogram: skip\n"), 2u); // not a test
  EXPECT_EQ(error_line("states: 1 2\n\nfrob: 1\nprogram: skip\n"), 3u);       // unknown key
  EXPECT_EQ(error_line("states: 1 2\nprogram:\n  while x do skip"), 3u);       // unclosed loop
  EXPECT_EQ(error_line("states: 1 2\npost: q\ntest q = id\npre: r\nprogram: skip\n"), 4u);
  EXPECT_EQ(error_line("states: 1 2\npre: nope\nprogram: skip\n"), 2u);        // unbound test
  EXPECT_NE(error_line("states: 1 2\n"), 0u);                                  // no program
  EXPECT_EQ(error_line("states: 1 2\natom x = {}\natom x = id\nprogram: x\n"), 3u);
  EXPECT_EQ(error_line("states: 1 2\nprogram: y\n"), 2u);
}

TEST(ProgramIo, LoadPrefixesPath) {
  EXPECT_THROW(load_program_file("/nonexistent/x.prog"), Error);
}
