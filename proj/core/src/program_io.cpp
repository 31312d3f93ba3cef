#include "kad/program_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace kad {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''))
      return false;
  return true;
}

class FileParser {
public:
  ProgramFile parse(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos)
        end = text.size();
      ++line_;
      std::string_view line = text.substr(start, end - start);
      if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (line.starts_with("program:")) {
        const std::size_t offset = start + (text.substr(start).find("program:")) + 8;
        return finish(text.substr(offset), line_);
      }
      if (!line.empty())
        parse_line(line);
      start = end + 1;
    }
    fail("missing 'program:' section");
  }

private:
  void parse_line(std::string_view line) {
    if (line.starts_with("atom ") || line.starts_with("test ")) {
      const bool is_atom = line.starts_with("atom ");
      require_space();
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        fail("expected 'NAME = relation'");
      const std::string name(trim(line.substr(5, eq - 5)));
      if (!is_identifier(name))
        fail("invalid name '" + name + "'");
      if (atoms_.contains(name) || tests_.contains(name))
        fail("'" + name + "' declared twice");
      Rel r = relation(trim(line.substr(eq + 1)));
      if (!is_atom && !r.is_subidentity())
        fail("test '" + name + "' is not a subidentity");
      (is_atom ? atoms_ : tests_).emplace(name, std::move(r));
      return;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos)
      fail("expected 'key: value' or a declaration");
    const std::string key(trim(line.substr(0, colon)));
    const std::string_view rest = trim(line.substr(colon + 1));
    if (key == "states") {
      if (space_)
        fail("states declared twice");
      std::vector<std::string> names;
      std::istringstream in{std::string(rest)};
      for (std::string tok; in >> tok;)
        names.push_back(tok);
      try {
        space_ = StateSpace::create(std::move(names));
      } catch (const ModelError &e) {
        fail(e.what());
      }
    } else if (key == "pre" || key == "post") {
      auto &slot = key == "pre" ? pre_ : post_;
      if (slot)
        fail(key + " declared twice");
      slot = test(rest);
      (key == "pre" ? pre_line_ : post_line_) = line_;
    } else if (key == "invariant") {
      invariants_.push_back(test(rest));
      invariant_lines_.push_back(line_);
    } else {
      fail("unknown key '" + key + "'");
    }
  }

  void require_space() const {
    if (!space_)
      fail("declaration before 'states:'");
  }

  Rel relation(std::string_view text) const {
    try {
      return parse_relation(text, *space_);
    } catch (const ParseError &e) {
      fail("column " + std::to_string(e.column()) + " of relation literal: " + e.message());
    } catch (const ModelError &e) {
      fail(e.what());
    }
  }

  TestExpr test(std::string_view text) const {
    // Columns are relative to the value.
    return parse_test_expr(text, line_);
  }

  ProgramFile finish(std::string_view program_text, std::size_t first_line) const {
    require_space();
    Program program = parse_program(program_text, first_line);
    ProgramFile out{Bindings{*space_, atoms_, tests_}, program, pre_, post_, invariants_};
    // Resolve every name now so errors point at the file rather than a later run.
    auto resolve = [&](const auto &item, std::size_t line) {
      try {
        denote(item, out.bindings);
      } catch (const EvalError &e) {
        throw ParseError(e.what(), line, 1);
      }
    };
    if (pre_)
      resolve(*pre_, pre_line_);
    if (post_)
      resolve(*post_, post_line_);
    for (std::size_t i = 0; i < invariants_.size(); ++i)
      resolve(invariants_[i], invariant_lines_[i]);
    resolve(program, first_line);
    if (invariants_.size() > count_loops(program))
      throw ParseError("more invariants than loops", first_line, 1);
    return out;
  }

  [[noreturn]] void fail(const std::string &message) const { throw ParseError(message, line_, 1); }

  std::size_t line_ = 0;
  std::optional<StateSpace> space_;
  std::map<std::string, Rel, std::less<>> atoms_;
  std::map<std::string, Rel, std::less<>> tests_;
  std::optional<TestExpr> pre_;
  std::optional<TestExpr> post_;
  std::vector<TestExpr> invariants_;
  std::size_t pre_line_ = 0;
  std::size_t post_line_ = 0;
  std::vector<std::size_t> invariant_lines_;
};

} // namespace

ProgramFile parse_program_file(std::string_view text) { return FileParser().parse(text); }

ProgramFile load_program_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open program file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_program_file(buf.str());
  } catch (const ParseError &e) {
    throw Error(path + ": " + e.what());
  }
}

} // namespace kad
