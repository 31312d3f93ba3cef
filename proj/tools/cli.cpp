#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kad/axioms.hpp"
#include "kad/ev_periodic.hpp"
#include "kad/hoare.hpp"
#include "kad/model_io.hpp"
#include "kad/model_search.hpp"
#include "kad/phi.hpp"
#include "kad/program_io.hpp"
#include "kad/relation.hpp"

namespace kad::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { Text, Structured };

struct ModelSource {
  std::string file;
  std::string builtin;

  void add_to(CLI::App &cmd) {
    auto *m = cmd.add_option("--model", file, "Model file");
    auto *b = cmd.add_option("--builtin", builtin, "Built-in model")
                  ->check(CLI::IsMember({"lemma4", "trivial", "bool2", "rel1", "rel2"}));
    m->excludes(b);
    b->excludes(m);
  }

  [[nodiscard]] std::string label() const { return file.empty() ? builtin : file; }

  [[nodiscard]] FiniteAlgebra load() const {
    if (!file.empty())
      return load_model(file);
    if (builtin == "lemma4")
      return lemma4_model();
    if (builtin == "trivial")
      return trivial_algebra();
    if (builtin == "bool2")
      return boolean_kad();
    if (builtin == "rel1")
      return as_finite_algebra(StateSpace::numbered(1));
    if (builtin == "rel2")
      return as_finite_algebra(StateSpace::numbered(2));
    throw Error("one of --model or --builtin is required");
  }
};

AxiomProfile profile_from(const std::string &name) {
  if (auto p = parse_profile(name))
    return *p;
  throw Error("unknown profile '" + name + "'");
}

void emit(std::ostream &out, Format format, const ordered_json &doc, const std::string &text) {
  if (format == Format::Structured)
    out << doc.dump(2) << '\n';
  else
    out << text;
}

ordered_json violations_json(const CheckReport &report) {
  ordered_json list = ordered_json::array();
  for (const auto &v : report.violations) {
    ordered_json assignment = ordered_json::object();
    for (const auto &[var, value] : v.assignment)
      assignment[var] = value;
    list.push_back({{"axiom", v.axiom}, {"assignment", assignment}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  return list;
}

int check_axioms_cmd(const ModelSource &src, const std::string &profile_name, Format format,
                     std::ostream &out) {
  const FiniteAlgebra algebra = src.load();
  const AxiomProfile profile = profile_from(profile_name);
  const CheckReport report = check_axioms(algebra, profile);
  ordered_json doc{{"command", "check-axioms"},
                   {"model", src.label()},
                   {"profile", to_string(profile)},
                   {"passed", report.passed},
                   {"instances", report.instances},
                   {"violations", violations_json(report)}};
  emit(out, format, doc, "model " + src.label() + "\n" + describe(report));
  return report.passed ? kHolds : kRefuted;
}

int eval_cmd(const ModelSource &src, const std::string &text, const std::vector<std::string> &binds,
             const std::vector<std::string> &test_binds, Format format, std::ostream &out) {
  const FiniteAlgebra algebra = src.load();
  std::map<std::string, Elem, std::less<>> bound;
  std::set<std::string, std::less<>> test_names;
  auto bind = [&](const std::string &spec, bool test) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error("binding '" + spec + "' is not of the form NAME=ELEMENT");
    const std::string name = spec.substr(0, eq);
    const auto value = algebra.find(spec.substr(eq + 1));
    if (!value)
      throw Error("binding '" + spec + "' names no element of the model");
    if (test && !algebra.is_test(*value))
      throw Error("binding '" + spec + "' names a non-test element");
    if (!bound.emplace(name, *value).second)
      throw Error("variable '" + name + "' bound twice");
    if (test)
      test_names.insert(name);
  };
  for (const auto &b : binds)
    bind(b, false);
  for (const auto &b : test_binds)
    bind(b, true);
  // Unbound identifiers naming carrier elements stand for those elements.
  for (Elem e : algebra.elements())
    if (algebra.is_test(e) && !bound.contains(algebra.name(e)))
      test_names.insert(algebra.name(e));

  const Term term = parse_term(text, test_names);
  const Term core = desugar(term);
  const Elem value = evaluate(algebra, core, [&](const Term &v) {
    std::optional<Elem> e;
    if (auto it = bound.find(v.name()); it != bound.end())
      e = it->second;
    else
      e = algebra.find(v.name());
    if (!e)
      throw EvalError("unbound variable '" + v.name() + "'");
    return *e;
  });
  ordered_json doc{{"command", "eval"},
                   {"model", src.label()},
                   {"term", print_term(term)},
                   {"value", algebra.name(value)},
                   {"test", algebra.is_test(value)}};
  emit(out, format, doc, print_term(term) + " = " + algebra.name(value) + "\n");
  return kHolds;
}

ordered_json phi_json(const FiniteAlgebra &algebra, const PhiResult &result) {
  ordered_json doc{{"holds", result.holds}};
  if (result.witness) {
    const auto &w = *result.witness;
    doc["witness"] = {{"x", algebra.name(w.x)},
                      {"y", algebra.name(w.y)},
                      {"p", algebra.name(w.p)},
                      {"q", algebra.name(w.q)}};
  }
  return doc;
}

int check_phi_cmd(const ModelSource &src, Format format, std::ostream &out) {
  const FiniteAlgebra algebra = src.load();
  const PhiResult result = check_phi(algebra);
  ordered_json doc{{"command", "check-phi"}, {"model", src.label()}};
  doc.update(phi_json(algebra, result));
  emit(out, format, doc, "model " + src.label() + "\n" + describe(algebra, result));
  return result.holds ? kHolds : kRefuted;
}

int find_models_cmd(std::size_t size, const std::string &profile_name,
                    const std::string &constraint_name, std::size_t limit, Format format,
                    std::ostream &out) {
  const AxiomProfile profile = profile_from(profile_name);
  std::optional<PhiConstraint> constraint;
  if (!constraint_name.empty()) {
    constraint = parse_constraint(constraint_name);
    if (!constraint)
      throw Error("unknown constraint '" + constraint_name + "' (expected phi-fails or phi-holds)");
  }
  std::ostringstream text;
  ordered_json models = ordered_json::array();
  std::size_t count = 0;
  SearchOptions options;
  options.limit = limit;
  const SearchStats stats = find_models(
      size, profile, constraint,
      [&](const FiniteAlgebra &m) {
        ++count;
        text << "# model " << count << "\n" << write_model(m) << "\n";
        models.push_back(write_model(m));
        return true;
      },
      options);
  text << "# " << stats.models << " model(s) of size " << size << " for profile "
       << to_string(profile);
  if (constraint)
    text << " with " << to_string(*constraint);
  text << "\n";
  ordered_json doc{{"command", "find-models"},
                   {"size", size},
                   {"profile", to_string(profile)},
                   {"constraint", constraint ? ordered_json(to_string(*constraint)) : ordered_json()},
                   {"count", stats.models},
                   {"models", models}};
  emit(out, format, doc, text.str());
  return stats.models > 0 ? kHolds : kRefuted;
}

int vcgen_cmd(const std::string &path, const std::string &pre_text, const std::string &post_text,
              Format format, std::ostream &out) {
  const ProgramFile file = load_program_file(path);
  auto resolve = [&](const std::string &text, const std::optional<TestExpr> &fallback,
                     const char *what) {
    if (!text.empty())
      return denote(parse_test_expr(text), file.bindings);
    if (fallback)
      return denote(*fallback, file.bindings);
    throw Error(std::string("no ") + what + " given in the file or on the command line");
  };
  const Rel pre = resolve(pre_text, file.pre, "precondition");
  const Rel post = resolve(post_text, file.post, "postcondition");
  std::vector<Rel> invariants;
  for (const auto &inv : file.invariants)
    invariants.push_back(denote(inv, file.bindings));
  const VcResult result = generate_vcs(file.program, pre, post, file.bindings, invariants);

  std::ostringstream text;
  text << "program " << print_program(file.program) << "\n";
  text << "computed precondition " << print_relation(result.precondition) << "\n";
  ordered_json conditions = ordered_json::array();
  for (const auto &vc : result.conditions) {
    text << (vc.valid() ? "[valid]   " : "[invalid] ") << vc.label << ": "
         << print_relation(vc.lhs) << " <= " << print_relation(vc.rhs) << "\n";
    conditions.push_back({{"label", vc.label},
                          {"lhs", print_relation(vc.lhs)},
                          {"rhs", print_relation(vc.rhs)},
                          {"valid", vc.valid()}});
  }
  text << (result.valid() ? "triple holds" : "triple not verified") << "\n";
  ordered_json doc{{"command", "vcgen"},
                   {"program", print_program(file.program)},
                   {"precondition", print_relation(result.precondition)},
                   {"conditions", conditions},
                   {"valid", result.valid()}};
  emit(out, format, doc, text.str());
  return result.valid() ? kHolds : kRefuted;
}

struct SynthArgs {
  std::string file, x, y, p, q, method = "wlp";
};

int synth_mid_cmd(const SynthArgs &a, Format format, std::ostream &out) {
  const ProgramFile file = load_program_file(a.file);
  const Program x = parse_program(a.x);
  const Program y = parse_program(a.y);
  const Rel p = denote(parse_test_expr(a.p), file.bindings);
  const Rel q = denote(parse_test_expr(a.q), file.bindings);
  const SynthMethod method = parse_synth_method(a.method);
  ordered_json doc{{"command", "synth-mid"},
                   {"x", print_program(x)},
                   {"y", print_program(y)},
                   {"method", to_string(method)}};
  Rel r = Rel::empty(file.bindings.space);
  try {
    r = synth_mid(x, y, p, q, method, file.bindings);
  } catch (const PreconditionError &e) {
    doc["premise"] = false;
    emit(out, format, doc, std::string(e.what()) + "\n");
    return kRefuted;
  }
  const Rel X = denote(x, file.bindings);
  const Rel Y = denote(y, file.bindings);
  const bool first = triple_holds(p, X, r);
  const bool second = triple_holds(r, Y, q);
  doc["premise"] = true;
  doc["r"] = print_relation(r);
  doc["first_triple"] = first;
  doc["second_triple"] = second;
  std::ostringstream text;
  text << "r = " << print_relation(r) << " (" << to_string(method) << ")\n"
       << "{p} x {r}: " << (first ? "holds" : "fails") << "\n"
       << "{r} y {q}: " << (second ? "holds" : "fails") << "\n";
  emit(out, format, doc, text.str());
  return first && second ? kHolds : kRefuted;
}

int demo_separation(Format format, std::ostream &out) {
  const FiniteAlgebra lemma4 = lemma4_model();
  const FiniteAlgebra rel2 = as_finite_algebra(StateSpace::numbered(2));
  const CheckReport kat = check_axioms(lemma4, AxiomProfile::KAT);
  const PhiResult lemma4_phi = check_phi(lemma4);
  const CheckReport kad = check_axioms(rel2, AxiomProfile::KAD);
  const PhiResult rel2_phi = check_phi(rel2);
  const bool separated = kat.passed && !lemma4_phi.holds && kad.passed && rel2_phi.holds;

  std::ostringstream text;
  text << "[1] lemma4 " << describe(kat)
       << "[2] lemma4 " << describe(lemma4, lemma4_phi)
       << "[3] rel2 " << describe(kad)
       << "[4] rel2 " << describe(rel2, rel2_phi)
       << (separated ? "KAT ⊬ φ, AS ⊢ φ" : "separation not reproduced") << "\n";
  ordered_json doc{{"command", "demo separation"},
                   {"lemma4_kat", kat.passed},
                   {"lemma4_phi", phi_json(lemma4, lemma4_phi)},
                   {"rel2_kad", kad.passed},
                   {"rel2_phi", phi_json(rel2, rel2_phi)},
                   {"separated", separated}};
  emit(out, format, doc, text.str());
  return separated ? kHolds : kRefuted;
}

int demo_nonexpressivity(const std::string &set_text, std::size_t count, Format format,
                         std::ostream &out) {
  const EvPeriodicSet set = parse_set(set_text);
  CandidateEnumerator candidates(set);
  std::ostringstream text;
  text << "set " << print_set(set) << "\n";
  ordered_json verdicts = ordered_json::array();
  bool all_sound = true;
  for (std::size_t i = 0; i < count; ++i) {
    const EvPeriodicSet candidate = candidates.next();
    const WlpVerdict verdict = refute_wlp_candidate(set, candidate);
    const bool sound = verdict_is_sound(set, candidate, verdict);
    all_sound = all_sound && sound;
    text << (i + 1) << ". " << print_set(candidate) << ": " << describe(verdict)
         << (sound ? "" : " [UNSOUND]") << "\n";
    verdicts.push_back(
        {{"candidate", print_set(candidate)}, {"verdict", describe(verdict)}, {"sound", sound}});
  }
  text << count << " candidate(s) refuted out of " << candidates.considered()
       << " enumerated; " << (all_sound ? "no test is a weakest precondition" : "refutation failed")
       << "\n";
  ordered_json doc{{"command", "demo nonexpressivity"},
                   {"set", print_set(set)},
                   {"considered", candidates.considered()},
                   {"verdicts", verdicts},
                   {"all_refuted", all_sound}};
  emit(out, format, doc, text.str());
  return all_sound ? kHolds : kRefuted;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Kleene algebra with tests and domain: model checks, search and Hoare logic",
               "kadtool"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_name = "text";
  app.add_option("--format", format_name, "Report format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  ModelSource src;
  std::string profile;
  std::function<int(Format)> action;

  auto *axioms = app.add_subcommand("check-axioms", "Check an axiom profile exhaustively");
  src.add_to(*axioms);
  axioms->add_option("--profile", profile, "Axiom profile")->required();
  axioms->callback([&] { action = [&](Format f) { return check_axioms_cmd(src, profile, f, out); }; });

  std::string term_text;
  std::vector<std::string> binds, test_binds;
  auto *eval = app.add_subcommand("eval", "Evaluate a term in a finite model");
  src.add_to(*eval);
  eval->add_option("term", term_text, "Term")->required();
  eval->add_option("--bind", binds, "Element variable binding NAME=ELEMENT");
  eval->add_option("--bind-test", test_binds, "Test variable binding NAME=ELEMENT");
  eval->callback([&] {
    action = [&](Format f) { return eval_cmd(src, term_text, binds, test_binds, f, out); };
  });

  auto *phi = app.add_subcommand("check-phi", "Check the sequencing sentence");
  src.add_to(*phi);
  phi->callback([&] { action = [&](Format f) { return check_phi_cmd(src, f, out); }; });

  std::size_t size = 0, limit = 0;
  std::string constraint;
  auto *search = app.add_subcommand("find-models", "Enumerate small models of a profile");
  search->add_option("--size", size, "Carrier size")->required();
  search->add_option("--profile", profile, "Axiom profile")->required();
  search->add_option("--constraint", constraint, "phi-fails or phi-holds");
  search->add_option("--limit", limit, "Stop after this many models (0 = all)");
  search->callback([&] {
    action = [&](Format f) { return find_models_cmd(size, profile, constraint, limit, f, out); };
  });

  std::string program_file, pre_text, post_text;
  auto *vcgen = app.add_subcommand("vcgen", "Generate and check verification conditions");
  vcgen->add_option("file", program_file, "Program file")->required();
  vcgen->add_option("--pre", pre_text, "Precondition (overrides the file)");
  vcgen->add_option("--post", post_text, "Postcondition (overrides the file)");
  vcgen->callback([&] {
    action = [&](Format f) { return vcgen_cmd(program_file, pre_text, post_text, f, out); };
  });

  SynthArgs synth;
  auto *mid = app.add_subcommand("synth-mid", "Synthesize an intermediate assertion");
  mid->add_option("file", synth.file, "Program file supplying states, atoms and tests")->required();
  mid->add_option("--x", synth.x, "First program")->required();
  mid->add_option("--y", synth.y, "Second program")->required();
  mid->add_option("--p", synth.p, "Precondition")->required();
  mid->add_option("--q", synth.q, "Postcondition")->required();
  mid->add_option("--method", synth.method, "wlp, range or meet")
      ->check(CLI::IsMember({"wlp", "range", "meet"}))
      ->capture_default_str();
  mid->callback([&] { action = [&](Format f) { return synth_mid_cmd(synth, f, out); }; });

  auto *demo = app.add_subcommand("demo", "Scripted demonstrations");
  demo->require_subcommand(1);
  auto *separation = demo->add_subcommand("separation", "KAT versus antidomain semirings");
  separation->callback([&] { action = [&](Format f) { return demo_separation(f, out); }; });
  std::string set_text = "evens";
  std::size_t candidate_count = 100;
  auto *nonexp = demo->add_subcommand("nonexpressivity", "Refute wlp candidates in the cofinite KAT");
  nonexp->add_option("--set", set_text, "Eventually periodic set")->capture_default_str();
  nonexp->add_option("--candidates", candidate_count, "Candidates to refute")->capture_default_str();
  nonexp->callback([&] {
    action = [&](Format f) { return demo_nonexpressivity(set_text, candidate_count, f, out); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kHolds : kError;
  }
  try {
    return action(format_name == "structured" ? Format::Structured : Format::Text);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

} // namespace kad::cli
