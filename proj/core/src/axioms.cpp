#include "kad/axioms.hpp"

#include <array>
#include <map>
#include <sstream>

namespace kad {

namespace {

const std::set<std::string, std::less<>> kTestNames = {"p", "q", "r"};

std::vector<std::string> vars_of(std::initializer_list<Term> terms, bool tests) {
  std::set<std::string> names;
  for (const Term &t : terms) {
    auto part = tests ? test_variables(t) : element_variables(t);
    names.insert(part.begin(), part.end());
  }
  return {names.begin(), names.end()};
}

Term parse(std::string_view text) { return desugar(parse_term(text, kTestNames)); }

Axiom eq(std::string name, std::string_view lhs, std::string_view rhs) {
  Term l = parse(lhs);
  Term r = parse(rhs);
  return Axiom{std::move(name), AxiomKind::Equation, vars_of({l, r}, false),
               vars_of({l, r}, true), l, r, std::nullopt};
}

Axiom implies(std::string name, std::string_view pl, std::string_view pr,
              std::string_view lhs, std::string_view rhs) {
  Term a = parse(pl);
  Term b = parse(pr);
  Term l = parse(lhs);
  Term r = parse(rhs);
  return Axiom{std::move(name),         AxiomKind::Implication, vars_of({a, b, l, r}, false),
               vars_of({a, b, l, r}, true), l, r, std::make_pair(a, b)};
}

Axiom member(std::string name, std::string_view term) {
  Term t = parse(term);
  return Axiom{std::move(name), AxiomKind::Membership, vars_of({t}, false),
               vars_of({t}, true), t, t, std::nullopt};
}

void append(std::vector<Axiom> &out, const std::vector<Axiom> &more) {
  out.insert(out.end(), more.begin(), more.end());
}

std::vector<Axiom> semiring_laws(bool near) {
  std::vector<Axiom> out = {
      eq("plus-assoc", "x + (y + z)", "(x + y) + z"),
      eq("plus-comm", "x + y", "y + x"),
      eq("plus-unit", "x + 0", "x"),
      eq("times-assoc", "x ; (y ; z)", "(x ; y) ; z"),
      eq("times-left-unit", "1 ; x", "x"),
      eq("times-right-unit", "x ; 1", "x"),
  };
  if (!near)
    out.push_back(eq("left-distrib", "x ; (y + z)", "x ; y + x ; z"));
  out.push_back(eq("right-distrib", "(x + y) ; z", "x ; z + y ; z"));
  if (!near)
    out.push_back(eq("left-annihil", "x ; 0", "0"));
  out.push_back(eq("right-annihil", "0 ; x", "0"));
  return out;
}

std::vector<Axiom> idempotence() { return {eq("plus-idem", "x + x", "x")}; }

std::vector<Axiom> star_laws() {
  return {
      eq("unfold-left", "1 + x ; x*", "x*"),
      eq("unfold-right", "1 + x* ; x", "x*"),
      implies("induct-left", "z + x ; y", "y", "x* ; z", "y"),
      implies("induct-right", "z + y ; x", "y", "z ; x*", "y"),
  };
}

// The embedding of the test algebra is the identity on the test subset, so
// the boolean-algebra laws are stated with the carrier's + and ;.
std::vector<Axiom> test_laws() {
  return {
      member("test-zero", "0"),
      member("test-one", "1"),
      member("test-plus-closed", "p + q"),
      member("test-times-closed", "p ; q"),
      member("test-compl-closed", "!p"),
      eq("test-meet-comm", "p ; q", "q ; p"),
      eq("test-meet-idem", "p ; p", "p"),
      eq("test-absorb-join", "p + p ; q", "p"),
      eq("test-absorb-meet", "p ; (p + q)", "p"),
      eq("test-join-distrib", "p + q ; r", "(p + q) ; (p + r)"),
      eq("test-compl-join", "p + !p", "1"),
      eq("test-compl-meet", "p ; !p", "0"),
      eq("test-compl-invol", "!!p", "p"),
  };
}

std::vector<Axiom> antidomain_laws() {
  return {
      eq("adom-annihil", "a(x) ; x", "0"),
      eq("adom-local", "a(x ; y) + a(x ; d(y))", "a(x ; d(y))"),
      eq("adom-compl", "a(x) + d(x)", "1"),
  };
}

std::vector<Axiom> antirange_laws() {
  return {
      eq("aran-annihil", "x ; ar(x)", "0"),
      eq("aran-local", "ar(x ; y) + ar(r(x) ; y)", "ar(r(x) ; y)"),
      eq("aran-compl", "ar(x) + r(x)", "1"),
  };
}

std::vector<Axiom> compatibility_laws() {
  return {
      eq("dom-aran-compat", "d(ar(x))", "ar(x)"),
      eq("ran-adom-compat", "r(a(x))", "a(x)"),
  };
}

std::vector<Axiom> build(AxiomProfile profile) {
  std::vector<Axiom> out;
  auto kleene = [&] {
    append(out, semiring_laws(false));
    append(out, idempotence());
    append(out, star_laws());
  };
  switch (profile) {
  case AxiomProfile::Semiring:
    append(out, semiring_laws(false));
    break;
  case AxiomProfile::Dioid:
    append(out, semiring_laws(false));
    append(out, idempotence());
    break;
  case AxiomProfile::Kleene:
    kleene();
    break;
  case AxiomProfile::TS:
    append(out, semiring_laws(false));
    append(out, idempotence());
    append(out, test_laws());
    break;
  case AxiomProfile::KAT:
    kleene();
    append(out, test_laws());
    break;
  case AxiomProfile::AS:
    append(out, semiring_laws(false));
    append(out, antidomain_laws());
    break;
  case AxiomProfile::NearAS:
    append(out, semiring_laws(true));
    append(out, antidomain_laws());
    break;
  case AxiomProfile::KAD:
    kleene();
    append(out, antidomain_laws());
    break;
  case AxiomProfile::ARS:
    append(out, semiring_laws(false));
    append(out, antirange_laws());
    break;
  case AxiomProfile::KADR:
    kleene();
    append(out, antidomain_laws());
    append(out, antirange_laws());
    append(out, compatibility_laws());
    break;
  }
  return out;
}

constexpr std::array<std::pair<AxiomProfile, std::string_view>, 10> kProfileNames = {{
    {AxiomProfile::Semiring, "semiring"},
    {AxiomProfile::Dioid, "dioid"},
    {AxiomProfile::Kleene, "kleene"},
    {AxiomProfile::TS, "ts"},
    {AxiomProfile::KAT, "kat"},
    {AxiomProfile::AS, "as"},
    {AxiomProfile::NearAS, "near-as"},
    {AxiomProfile::KAD, "kad"},
    {AxiomProfile::ARS, "ars"},
    {AxiomProfile::KADR, "kadr"},
}};

} // namespace

std::string_view to_string(AxiomProfile profile) {
  for (const auto &[p, name] : kProfileNames)
    if (p == profile)
      return name;
  return "?";
}

std::optional<AxiomProfile> parse_profile(std::string_view text) {
  for (const auto &[p, name] : kProfileNames)
    if (name == text)
      return p;
  return std::nullopt;
}

const std::vector<AxiomProfile> &all_profiles() {
  static const std::vector<AxiomProfile> profiles = [] {
    std::vector<AxiomProfile> out;
    for (const auto &entry : kProfileNames)
      out.push_back(entry.first);
    return out;
  }();
  return profiles;
}

const std::vector<Axiom> &axioms_for(AxiomProfile profile) {
  static const std::map<AxiomProfile, std::vector<Axiom>> table = [] {
    std::map<AxiomProfile, std::vector<Axiom>> out;
    for (const auto &entry : kProfileNames)
      out.emplace(entry.first, build(entry.first));
    return out;
  }();
  return table.at(profile);
}

bool profile_needs_star(AxiomProfile p) {
  return p == AxiomProfile::Kleene || p == AxiomProfile::KAT || p == AxiomProfile::KAD ||
         p == AxiomProfile::KADR;
}

bool profile_needs_adom(AxiomProfile p) {
  return p == AxiomProfile::AS || p == AxiomProfile::NearAS || p == AxiomProfile::KAD ||
         p == AxiomProfile::KADR;
}

bool profile_needs_aran(AxiomProfile p) {
  return p == AxiomProfile::ARS || p == AxiomProfile::KADR;
}

bool profile_needs_tests(AxiomProfile p) { return p == AxiomProfile::TS || p == AxiomProfile::KAT; }

CheckReport check_axioms(const FiniteAlgebra &algebra, AxiomProfile profile,
                         const CheckOptions &options) {
  const std::string label(to_string(profile));
  if (profile_needs_star(profile) && !algebra.has_star())
    throw MissingTableError("profile " + label + " needs a star table");
  if (profile_needs_adom(profile) && !algebra.has_adom())
    throw MissingTableError("profile " + label + " needs an adom table");
  if (profile_needs_aran(profile) && !algebra.has_aran())
    throw MissingTableError("profile " + label + " needs an aran table");
  if (profile_needs_tests(profile) && !algebra.has_complement())
    throw MissingTableError("profile " + label + " needs tests with a complement");

  const std::vector<Elem> elements = algebra.elements();
  return check_laws(algebra, profile, std::span<const Elem>(elements),
                    std::span<const Elem>(algebra.tests()),
                    [&](Elem e) { return algebra.name(e); }, options);
}

std::string describe(const CheckReport &report) {
  std::ostringstream out;
  out << "profile " << to_string(report.profile) << ": "
      << (report.passed ? "passed" : "FAILED") << " (" << report.instances << " instances)\n";
  for (const Violation &v : report.violations) {
    out << "  violated " << v.axiom << " at";
    for (const auto &[var, value] : v.assignment)
      out << ' ' << var << '=' << value;
    out << ": lhs=" << v.lhs << " rhs=" << v.rhs << '\n';
  }
  return out.str();
}

} // namespace kad
