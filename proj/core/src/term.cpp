#include "kad/term.hpp"

#include <cctype>
#include <functional>

namespace kad {

struct Term::Node {
  Op op;
  std::string name;
  Term lhs;
  Term rhs;
};

Term Term::make(Op op, std::string name, Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(
      Node{op, std::move(name), std::move(lhs), std::move(rhs)}));
}

// Leaves have null children; they are never dereferenced.
Term Term::make(Op op, std::string name) {
  return Term(std::make_shared<const Node>(
      Node{op, std::move(name), Term(nullptr), Term(nullptr)}));
}

Term Term::zero() { return make(Op::Zero, {}); }
Term Term::one() { return make(Op::One, {}); }
Term Term::var(std::string name) { return make(Op::Var, std::move(name)); }
Term Term::test_var(std::string name) { return make(Op::TestVar, std::move(name)); }
Term Term::plus(Term lhs, Term rhs) { return make(Op::Plus, {}, std::move(lhs), std::move(rhs)); }
Term Term::times(Term lhs, Term rhs) { return make(Op::Times, {}, std::move(lhs), std::move(rhs)); }
Term Term::star(Term arg) { return make(Op::Star, {}, std::move(arg), Term(nullptr)); }
Term Term::negate(Term arg) { return make(Op::Not, {}, std::move(arg), Term(nullptr)); }
Term Term::adom(Term arg) { return make(Op::ADom, {}, std::move(arg), Term(nullptr)); }
Term Term::dom(Term arg) { return make(Op::Dom, {}, std::move(arg), Term(nullptr)); }
Term Term::aran(Term arg) { return make(Op::ARan, {}, std::move(arg), Term(nullptr)); }
Term Term::ran(Term arg) { return make(Op::Ran, {}, std::move(arg), Term(nullptr)); }
Term Term::box(Term program, Term post) {
  return make(Op::Box, {}, std::move(program), std::move(post));
}

Op Term::op() const { return node_->op; }
const std::string &Term::name() const { return node_->name; }
const Term &Term::lhs() const { return node_->lhs; }
const Term &Term::rhs() const { return node_->rhs; }

namespace {

int arity(Op op) {
  switch (op) {
  case Op::Zero:
  case Op::One:
  case Op::Var:
  case Op::TestVar:
    return 0;
  case Op::Plus:
  case Op::Times:
  case Op::Box:
    return 2;
  default:
    return 1;
  }
}

} // namespace

bool operator==(const Term &a, const Term &b) {
  if (a.node_ == b.node_)
    return true;
  if (a.op() != b.op() || a.name() != b.name())
    return false;
  const int n = arity(a.op());
  if (n >= 1 && !(a.lhs() == b.lhs()))
    return false;
  if (n == 2 && !(a.rhs() == b.rhs()))
    return false;
  return true;
}

Sort sort_of(const Term &t, const std::set<std::string, std::less<>> &declared_tests) {
  switch (t.op()) {
  case Op::Zero:
  case Op::One:
  case Op::TestVar:
    return Sort::Test;
  case Op::Var:
    return declared_tests.contains(t.name()) ? Sort::Test : Sort::Element;
  case Op::Plus:
  case Op::Times: {
    const Sort l = sort_of(t.lhs(), declared_tests);
    const Sort r = sort_of(t.rhs(), declared_tests);
    return (l == Sort::Test && r == Sort::Test) ? Sort::Test : Sort::Element;
  }
  case Op::Star:
    sort_of(t.lhs(), declared_tests);
    return Sort::Element;
  case Op::Not:
    if (sort_of(t.lhs(), declared_tests) != Sort::Test)
      throw SortError("complement applied to element-sorted term '" +
                      print_term(t.lhs()) + "'");
    return Sort::Test;
  case Op::ADom:
  case Op::Dom:
  case Op::ARan:
  case Op::Ran:
    sort_of(t.lhs(), declared_tests);
    return Sort::Test;
  case Op::Box:
    sort_of(t.lhs(), declared_tests);
    sort_of(t.rhs(), declared_tests);
    return Sort::Test;
  }
  return Sort::Element;
}

Term desugar(const Term &t) {
  switch (t.op()) {
  case Op::Zero:
  case Op::One:
  case Op::Var:
  case Op::TestVar:
    return t;
  case Op::Plus:
    return Term::plus(desugar(t.lhs()), desugar(t.rhs()));
  case Op::Times:
    return Term::times(desugar(t.lhs()), desugar(t.rhs()));
  case Op::Star:
    return Term::star(desugar(t.lhs()));
  case Op::Not:
    return Term::negate(desugar(t.lhs()));
  case Op::ADom:
    return Term::adom(desugar(t.lhs()));
  case Op::ARan:
    return Term::aran(desugar(t.lhs()));
  case Op::Dom:
    return Term::adom(Term::adom(desugar(t.lhs())));
  case Op::Ran:
    return Term::aran(Term::aran(desugar(t.lhs())));
  case Op::Box:
    return Term::adom(Term::times(desugar(t.lhs()), Term::adom(desugar(t.rhs()))));
  }
  return t;
}

bool is_desugared(const Term &t) {
  switch (arity(t.op())) {
  case 0:
    return true;
  case 1:
    return t.op() != Op::Dom && t.op() != Op::Ran && is_desugared(t.lhs());
  default:
    return t.op() != Op::Box && is_desugared(t.lhs()) && is_desugared(t.rhs());
  }
}

namespace {

class TermParser {
public:
  TermParser(std::string_view text, const std::set<std::string, std::less<>> &tests)
      : text_(text), tests_(tests) {}

  Term parse() {
    Term t = expr();
    skip_space();
    if (pos_ != text_.size())
      fail(std::string("unexpected '") + text_[pos_] + "'");
    return t;
  }

private:
  Term expr() {
    Term t = product();
    while (accept('+'))
      t = Term::plus(std::move(t), product());
    return t;
  }

  Term product() {
    Term t = unary();
    while (accept(';'))
      t = Term::times(std::move(t), unary());
    return t;
  }

  Term unary() {
    if (accept('!'))
      return Term::negate(unary());
    if (accept('[')) {
      Term program = expr();
      expect(']');
      return Term::box(std::move(program), unary());
    }
    Term t = primary();
    while (accept('*'))
      t = Term::star(std::move(t));
    return t;
  }

  Term primary() {
    skip_space();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = expr();
      expect(')');
      return t;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      if (pos_ < text_.size() && is_ident_char(text_[pos_]))
        fail("malformed constant");
      return c == '0' ? Term::zero() : Term::one();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_]))
        ++pos_;
      std::string ident(text_.substr(start, pos_ - start));
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        using Ctor = Term (*)(Term);
        Ctor ctor = nullptr;
        if (ident == "a")
          ctor = &Term::adom;
        else if (ident == "d")
          ctor = &Term::dom;
        else if (ident == "ar")
          ctor = &Term::aran;
        else if (ident == "r")
          ctor = &Term::ran;
        else
          fail_at(start, "unknown operator '" + ident + "'");
        ++pos_;
        Term arg = expr();
        expect(')');
        return ctor(std::move(arg));
      }
      if (tests_.contains(ident))
        return Term::test_var(std::move(ident));
      return Term::var(std::move(ident));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string &message) const { fail_at(pos_, message); }

  [[noreturn]] void fail_at(std::size_t at, const std::string &message) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  std::string_view text_;
  const std::set<std::string, std::less<>> &tests_;
  std::size_t pos_ = 0;
};

// Precedence levels: 0 sum, 1 product, 2 prefix (! and [x]), 3 postfix *.
std::string print_at(const Term &t, int level) {
  auto wrap = [&](int own, std::string s) {
    return level > own ? "(" + s + ")" : s;
  };
  switch (t.op()) {
  case Op::Zero:
    return "0";
  case Op::One:
    return "1";
  case Op::Var:
  case Op::TestVar:
    return t.name();
  case Op::Plus:
    return wrap(0, print_at(t.lhs(), 0) + " + " + print_at(t.rhs(), 1));
  case Op::Times:
    return wrap(1, print_at(t.lhs(), 1) + " ; " + print_at(t.rhs(), 2));
  case Op::Not:
    return wrap(2, "!" + print_at(t.lhs(), 2));
  case Op::Box:
    return wrap(2, "[" + print_at(t.lhs(), 0) + "]" + print_at(t.rhs(), 2));
  case Op::Star:
    return print_at(t.lhs(), 3) + "*";
  case Op::ADom:
    return "a(" + print_at(t.lhs(), 0) + ")";
  case Op::Dom:
    return "d(" + print_at(t.lhs(), 0) + ")";
  case Op::ARan:
    return "ar(" + print_at(t.lhs(), 0) + ")";
  case Op::Ran:
    return "r(" + print_at(t.lhs(), 0) + ")";
  }
  return {};
}

void collect(const Term &t, Op kind, std::set<std::string> &out) {
  if (t.op() == kind) {
    out.insert(t.name());
    return;
  }
  const int n = arity(t.op());
  if (n >= 1)
    collect(t.lhs(), kind, out);
  if (n == 2)
    collect(t.rhs(), kind, out);
}

} // namespace

Term parse_term(std::string_view text, const std::set<std::string, std::less<>> &tests) {
  return TermParser(text, tests).parse();
}

std::string print_term(const Term &t) { return print_at(t, 0); }

std::set<std::string> element_variables(const Term &t) {
  std::set<std::string> out;
  collect(t, Op::Var, out);
  return out;
}

std::set<std::string> test_variables(const Term &t) {
  std::set<std::string> out;
  collect(t, Op::TestVar, out);
  return out;
}

} // namespace kad
