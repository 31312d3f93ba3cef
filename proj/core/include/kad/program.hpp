#pragma once

// While programs over named atomic commands and guards built from named
// tests.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "kad/error.hpp"

namespace kad {

class TestExpr {
public:
  enum class Kind { Zero, One, Id, Not, And, Or };

  static TestExpr zero();
  static TestExpr one();
  static TestExpr id(std::string name);
  static TestExpr negate(TestExpr arg);
  static TestExpr conj(TestExpr lhs, TestExpr rhs);
  static TestExpr disj(TestExpr lhs, TestExpr rhs);

  [[nodiscard]] Kind kind() const { return node_->kind; }
  [[nodiscard]] const std::string &name() const { return node_->name; }
  [[nodiscard]] const TestExpr &lhs() const { return *node_->lhs; }
  [[nodiscard]] const TestExpr &rhs() const { return *node_->rhs; }

  friend bool operator==(const TestExpr &a, const TestExpr &b);

private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const TestExpr> lhs;
    std::shared_ptr<const TestExpr> rhs;
  };
  explicit TestExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

class Program {
public:
  enum class Kind { Skip, Atom, Seq, If, While };

  static Program skip();
  static Program atom(std::string name);
  static Program seq(Program first, Program second);
  static Program if_then_else(TestExpr guard, Program then_branch, Program else_branch);
  static Program while_do(TestExpr guard, Program body);

  [[nodiscard]] Kind kind() const { return node_->kind; }
  /// Atom name.
  [[nodiscard]] const std::string &name() const { return node_->name; }
  /// Guard of If and While.
  [[nodiscard]] const TestExpr &guard() const { return *node_->guard; }
  /// First of Seq, then-branch of If, body of While.
  [[nodiscard]] const Program &first() const { return *node_->first; }
  /// Second of Seq, else-branch of If.
  [[nodiscard]] const Program &second() const { return *node_->second; }

  friend bool operator==(const Program &a, const Program &b);

private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const TestExpr> guard;
    std::shared_ptr<const Program> first;
    std::shared_ptr<const Program> second;
  };
  explicit Program(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// `!` binds tighter than `&`, which binds tighter than `|`.
/// `first_line` offsets reported line numbers when the text is an excerpt.
TestExpr parse_test_expr(std::string_view text, std::size_t first_line = 1);
Program parse_program(std::string_view text, std::size_t first_line = 1);

std::string print_test_expr(const TestExpr &t);
/// Re-parses to an equal program.
std::string print_program(const Program &p);

/// While loops in source (pre-)order.
std::size_t count_loops(const Program &p);

} // namespace kad
