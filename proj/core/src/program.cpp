#include "kad/program.hpp"

#include <cctype>
#include <vector>

namespace kad {

TestExpr TestExpr::zero() { return TestExpr(std::make_shared<const Node>(Node{Kind::Zero, {}, {}, {}})); }
TestExpr TestExpr::one() { return TestExpr(std::make_shared<const Node>(Node{Kind::One, {}, {}, {}})); }

TestExpr TestExpr::id(std::string name) {
  return TestExpr(std::make_shared<const Node>(Node{Kind::Id, std::move(name), {}, {}}));
}

TestExpr TestExpr::negate(TestExpr arg) {
  return TestExpr(std::make_shared<const Node>(
      Node{Kind::Not, {}, std::make_shared<const TestExpr>(std::move(arg)), {}}));
}

TestExpr TestExpr::conj(TestExpr lhs, TestExpr rhs) {
  return TestExpr(std::make_shared<const Node>(
      Node{Kind::And, {}, std::make_shared<const TestExpr>(std::move(lhs)),
           std::make_shared<const TestExpr>(std::move(rhs))}));
}

TestExpr TestExpr::disj(TestExpr lhs, TestExpr rhs) {
  return TestExpr(std::make_shared<const Node>(
      Node{Kind::Or, {}, std::make_shared<const TestExpr>(std::move(lhs)),
           std::make_shared<const TestExpr>(std::move(rhs))}));
}

bool operator==(const TestExpr &a, const TestExpr &b) {
  if (a.node_ == b.node_)
    return true;
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case TestExpr::Kind::Zero:
  case TestExpr::Kind::One:
    return true;
  case TestExpr::Kind::Id:
    return a.name() == b.name();
  case TestExpr::Kind::Not:
    return a.lhs() == b.lhs();
  case TestExpr::Kind::And:
  case TestExpr::Kind::Or:
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

Program Program::skip() { return Program(std::make_shared<const Node>(Node{Kind::Skip, {}, {}, {}, {}})); }

Program Program::atom(std::string name) {
  return Program(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}, {}, {}}));
}

Program Program::seq(Program first, Program second) {
  return Program(std::make_shared<const Node>(
      Node{Kind::Seq, {}, {}, std::make_shared<const Program>(std::move(first)),
           std::make_shared<const Program>(std::move(second))}));
}

Program Program::if_then_else(TestExpr guard, Program then_branch, Program else_branch) {
  return Program(std::make_shared<const Node>(
      Node{Kind::If, {}, std::make_shared<const TestExpr>(std::move(guard)),
           std::make_shared<const Program>(std::move(then_branch)),
           std::make_shared<const Program>(std::move(else_branch))}));
}

Program Program::while_do(TestExpr guard, Program body) {
  return Program(std::make_shared<const Node>(
      Node{Kind::While, {}, std::make_shared<const TestExpr>(std::move(guard)),
           std::make_shared<const Program>(std::move(body)), {}}));
}

bool operator==(const Program &a, const Program &b) {
  if (a.node_ == b.node_)
    return true;
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case Program::Kind::Skip:
    return true;
  case Program::Kind::Atom:
    return a.name() == b.name();
  case Program::Kind::Seq:
    return a.first() == b.first() && a.second() == b.second();
  case Program::Kind::If:
    return a.guard() == b.guard() && a.first() == b.first() && a.second() == b.second();
  case Program::Kind::While:
    return a.guard() == b.guard() && a.first() == b.first();
  }
  return false;
}

namespace {

struct Token {
  enum class Type { Ident, Symbol, End } type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line, column = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++i;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n')
        advance();
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      Token tok{Token::Type::Ident, {}, line, column};
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '\'')) {
        tok.text += text[i];
        advance();
      }
      out.push_back(std::move(tok));
    } else if (std::string_view("();!&|01").find(c) != std::string_view::npos) {
      out.push_back({Token::Type::Symbol, std::string(1, c), line, column});
      advance();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
  }
  out.push_back({Token::Type::End, {}, line, column});
  return out;
}

bool is_keyword(const std::string &word) {
  return word == "skip" || word == "if" || word == "then" || word == "else" || word == "fi" ||
         word == "while" || word == "do" || word == "od";
}

class Parser {
public:
  Parser(std::string_view text, std::size_t first_line) : tokens_(tokenize(text, first_line)) {}

  TestExpr test_only() {
    TestExpr t = disjunction();
    expect_end();
    return t;
  }

  Program program_only() {
    Program p = sequence();
    expect_end();
    return p;
  }

private:
  const Token &peek() const { return tokens_[pos_]; }

  bool accept(std::string_view text) {
    if (peek().type != Token::Type::End && peek().text == text) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(std::string_view text) {
    if (!accept(text))
      fail("expected '" + std::string(text) + "'");
  }

  void expect_end() {
    if (peek().type != Token::Type::End)
      fail("unexpected '" + peek().text + "'");
  }

  [[noreturn]] void fail(const std::string &message) const {
    const Token &tok = peek();
    throw ParseError(tok.type == Token::Type::End ? message + " at end of input" : message,
                     tok.line, tok.column);
  }

  TestExpr disjunction() {
    TestExpr t = conjunction();
    while (accept("|"))
      t = TestExpr::disj(t, conjunction());
    return t;
  }

  TestExpr conjunction() {
    TestExpr t = test_unary();
    while (accept("&"))
      t = TestExpr::conj(t, test_unary());
    return t;
  }

  TestExpr test_unary() {
    if (accept("!"))
      return TestExpr::negate(test_unary());
    if (accept("0"))
      return TestExpr::zero();
    if (accept("1"))
      return TestExpr::one();
    if (accept("(")) {
      TestExpr t = disjunction();
      expect(")");
      return t;
    }
    if (peek().type == Token::Type::Ident && !is_keyword(peek().text))
      return TestExpr::id(tokens_[pos_++].text);
    fail("expected a test");
  }

  Program sequence() {
    Program p = statement();
    while (accept(";"))
      p = Program::seq(p, statement());
    return p;
  }

  Program statement() {
    if (accept("skip"))
      return Program::skip();
    if (accept("if")) {
      TestExpr guard = disjunction();
      expect("then");
      Program then_branch = sequence();
      expect("else");
      Program else_branch = sequence();
      expect("fi");
      return Program::if_then_else(guard, then_branch, else_branch);
    }
    if (accept("while")) {
      TestExpr guard = disjunction();
      expect("do");
      Program body = sequence();
      expect("od");
      return Program::while_do(guard, body);
    }
    if (accept("(")) {
      Program p = sequence();
      expect(")");
      return p;
    }
    if (peek().type == Token::Type::Ident && !is_keyword(peek().text))
      return Program::atom(tokens_[pos_++].text);
    fail("expected a statement");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// 0: disjunction, 1: conjunction, 2: prefix.
std::string print_test(const TestExpr &t, int context) {
  switch (t.kind()) {
  case TestExpr::Kind::Zero:
    return "0";
  case TestExpr::Kind::One:
    return "1";
  case TestExpr::Kind::Id:
    return t.name();
  case TestExpr::Kind::Not:
    return "!" + print_test(t.lhs(), 2);
  case TestExpr::Kind::And: {
    std::string s = print_test(t.lhs(), 1) + " & " + print_test(t.rhs(), 2);
    return context > 1 ? "(" + s + ")" : s;
  }
  case TestExpr::Kind::Or: {
    std::string s = print_test(t.lhs(), 0) + " | " + print_test(t.rhs(), 1);
    return context > 0 ? "(" + s + ")" : s;
  }
  }
  return {};
}

std::string print_prog(const Program &p, bool parenthesize_seq) {
  switch (p.kind()) {
  case Program::Kind::Skip:
    return "skip";
  case Program::Kind::Atom:
    return p.name();
  case Program::Kind::Seq: {
    std::string s = print_prog(p.first(), false) + "; " + print_prog(p.second(), true);
    return parenthesize_seq ? "(" + s + ")" : s;
  }
  case Program::Kind::If:
    return "if " + print_test(p.guard(), 0) + " then " + print_prog(p.first(), false) +
           " else " + print_prog(p.second(), false) + " fi";
  case Program::Kind::While:
    return "while " + print_test(p.guard(), 0) + " do " + print_prog(p.first(), false) + " od";
  }
  return {};
}

} // namespace

TestExpr parse_test_expr(std::string_view text, std::size_t first_line) {
  return Parser(text, first_line).test_only();
}

Program parse_program(std::string_view text, std::size_t first_line) {
  return Parser(text, first_line).program_only();
}

std::string print_test_expr(const TestExpr &t) { return print_test(t, 0); }

std::string print_program(const Program &p) { return print_prog(p, false); }

std::size_t count_loops(const Program &p) {
  switch (p.kind()) {
  case Program::Kind::Skip:
  case Program::Kind::Atom:
    return 0;
  case Program::Kind::Seq:
  case Program::Kind::If:
    return count_loops(p.first()) + count_loops(p.second());
  case Program::Kind::While:
    return 1 + count_loops(p.first());
  }
  return 0;
}

} // namespace kad
