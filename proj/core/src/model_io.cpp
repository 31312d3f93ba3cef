#include "kad/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace kad {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok)
    out.push_back(tok);
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class ModelParser {
public:
  FiniteAlgebra parse(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos)
        end = text.size();
      ++line_no;
      line_ = line_no;
      std::string_view line = text.substr(start, end - start);
      if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (!line.empty())
        parse_line(line);
      start = end + 1;
    }
    return finish();
  }

private:
  void parse_line(std::string_view line) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos)
      fail("expected 'key: value'");
    const std::string key(trim(line.substr(0, colon)));
    const std::string_view rest = trim(line.substr(colon + 1));

    if (key == "carrier") {
      if (!carrier_.empty())
        fail("carrier declared twice");
      carrier_ = split_ws(rest);
      if (carrier_.empty())
        fail("empty carrier");
      for (std::size_t i = 0; i < carrier_.size(); ++i)
        if (!index_.emplace(carrier_[i], i).second)
          fail("duplicate element '" + carrier_[i] + "'");
      return;
    }
    if (carrier_.empty())
      fail("'" + key + "' before carrier declaration");

    if (key == "zero" || key == "one") {
      auto toks = split_ws(rest);
      if (toks.size() != 1)
        fail("expected a single element");
      auto &target = key == "zero" ? zero_ : one_;
      if (target)
        fail(key + " declared twice");
      target = lookup(toks[0]);
    } else if (key == "tests") {
      if (tests_seen_)
        fail("tests declared twice");
      tests_seen_ = true;
      for (const auto &tok : split_ws(rest))
        tests_.push_back(lookup(tok));
    } else if (key == "plus" || key == "times") {
      auto [args, result] = row(rest, 2);
      auto &table = binary_[key];
      const std::size_t n = carrier_.size();
      if (table.empty())
        table.assign(n * n, -1);
      auto &cell = table[args[0].id * n + args[1].id];
      if (cell >= 0)
        fail("duplicate row for " + key + " " + carrier_[args[0].id] + " " + carrier_[args[1].id]);
      cell = result.id;
    } else if (key == "star" || key == "adom" || key == "aran" || key == "not") {
      auto [args, result] = row(rest, 1);
      auto &table = unary_[key];
      if (table.empty())
        table.assign(carrier_.size(), -1);
      auto &cell = table[args[0].id];
      if (cell >= 0)
        fail("duplicate row for " + key + " " + carrier_[args[0].id]);
      cell = result.id;
    } else {
      fail("unknown key '" + key + "'");
    }
  }

  std::pair<std::vector<Elem>, Elem> row(std::string_view rest, std::size_t arity) {
    auto toks = split_ws(rest);
    if (toks.size() != arity + 2 || toks[arity] != "->")
      fail(arity == 2 ? "expected 'e e -> e'" : "expected 'e -> e'");
    std::vector<Elem> args;
    for (std::size_t i = 0; i < arity; ++i)
      args.push_back(lookup(toks[i]));
    return {args, lookup(toks[arity + 1])};
  }

  Elem lookup(const std::string &name) {
    auto it = index_.find(name);
    if (it == index_.end())
      fail("unknown element '" + name + "'");
    return Elem{static_cast<std::uint16_t>(it->second)};
  }

  [[noreturn]] void fail(const std::string &message) const { throw ParseError(message, line_, 1); }

  std::vector<Elem> complete_binary(const std::string &key) {
    auto it = binary_.find(key);
    if (it == binary_.end())
      fail("missing " + key + " table");
    std::vector<Elem> out;
    const std::size_t n = carrier_.size();
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      if (it->second[i] < 0)
        fail("missing row " + key + ": " + carrier_[i / n] + " " + carrier_[i % n]);
      out.push_back(Elem{static_cast<std::uint16_t>(it->second[i])});
    }
    return out;
  }

  std::optional<std::vector<Elem>> complete_unary(const std::string &key,
                                                  const std::vector<Elem> *only = nullptr) {
    auto it = unary_.find(key);
    if (it == unary_.end())
      return std::nullopt;
    std::vector<Elem> out(carrier_.size());
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      const bool required =
          !only || std::find(only->begin(), only->end(), Elem{static_cast<std::uint16_t>(i)}) !=
                       only->end();
      if (it->second[i] < 0) {
        if (required)
          fail("missing row " + key + ": " + carrier_[i]);
        continue;
      }
      if (!required)
        fail(key + " row for non-test " + carrier_[i]);
      out[i] = Elem{static_cast<std::uint16_t>(it->second[i])};
    }
    return out;
  }

  FiniteAlgebra finish() {
    ++line_;
    if (carrier_.empty())
      fail("missing carrier");
    if (!zero_ || !one_)
      fail("missing zero or one");
    AlgebraTables t;
    t.carrier = carrier_;
    t.zero = *zero_;
    t.one = *one_;
    t.plus = complete_binary("plus");
    t.times = complete_binary("times");
    t.star = complete_unary("star");
    t.adom = complete_unary("adom");
    t.aran = complete_unary("aran");
    t.tests = tests_;
    if (unary_.contains("not")) {
      if (tests_.empty())
        fail("'not' rows require a tests declaration");
      t.complement = complete_unary("not", &tests_);
    }
    return FiniteAlgebra::create(std::move(t));
  }

  std::size_t line_ = 0;
  std::vector<std::string> carrier_;
  std::map<std::string, std::size_t> index_;
  std::optional<Elem> zero_;
  std::optional<Elem> one_;
  bool tests_seen_ = false;
  std::vector<Elem> tests_;
  std::map<std::string, std::vector<int>> binary_;
  std::map<std::string, std::vector<int>> unary_;
};

} // namespace

FiniteAlgebra parse_model(std::string_view text) { return ModelParser().parse(text); }

FiniteAlgebra load_model(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const ParseError &e) {
    throw Error(path + ": " + e.what());
  }
}

std::string write_model(const FiniteAlgebra &algebra) {
  const AlgebraTables &t = algebra.tables();
  std::ostringstream out;
  out << "carrier:";
  for (const auto &name : t.carrier)
    out << ' ' << name;
  out << "\nzero: " << algebra.name(t.zero) << "\none: " << algebra.name(t.one) << '\n';
  if (!t.tests.empty()) {
    out << "tests:";
    for (Elem e : t.tests)
      out << ' ' << algebra.name(e);
    out << '\n';
  }
  const auto elements = algebra.elements();
  for (const auto &[key, table] : {std::pair{"plus", &t.plus}, std::pair{"times", &t.times}})
    for (Elem a : elements)
      for (Elem b : elements)
        out << key << ": " << algebra.name(a) << ' ' << algebra.name(b) << " -> "
            << algebra.name((*table)[a.id * algebra.size() + b.id]) << '\n';
  for (const auto &[key, table] :
       {std::pair{"star", &t.star}, std::pair{"adom", &t.adom}, std::pair{"aran", &t.aran}})
    if (*table)
      for (Elem a : elements)
        out << key << ": " << algebra.name(a) << " -> " << algebra.name((**table)[a.id]) << '\n';
  if (t.complement)
    for (Elem p : t.tests)
      out << "not: " << algebra.name(p) << " -> " << algebra.name((*t.complement)[p.id]) << '\n';
  return out.str();
}

} // namespace kad
