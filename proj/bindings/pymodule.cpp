#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "horco/engine.hpp"
#include "horco/error.hpp"
#include "horco/parser.hpp"
#include "horco/report.hpp"

namespace py = pybind11;
using namespace horco;

namespace {

ClosureConfig config_from_kwargs(const std::string& acc, const std::string& call_order,
                                 bool patterns, bool red, bool strengthen, int depth, int trans) {
  ClosureConfig cfg;
  cfg.acc_mode = acc == "base" ? AccMode::BaseOnly : AccMode::Positive;
  cfg.call_order = call_order == "subterm"     ? CallOrder::Subterm
                   : call_order == "recursive" ? CallOrder::RecursiveHorco
                                               : CallOrder::Accessibility;
  cfg.miller_rules = patterns;
  cfg.red_rule = red;
  cfg.strengthen_call = strengthen;
  cfg.depth_budget = depth;
  cfg.trans_budget = trans;
  return cfg;
}

struct PySystem {
  std::shared_ptr<OrientEngine> engine;

  const RewriteSystem& sys() const { return engine->system(); }

  std::vector<std::string> rules() const {
    std::vector<std::string> out;
    for (const auto& r : sys().rules) out.push_back(r.text.empty() ? r.show() : r.text);
    return out;
  }

  py::dict verdict_to_dict(const Verdict& v, const std::string& rule_text) const {
    py::dict d;
    d["rule"] = rule_text;
    d["status"] = status_word(v.status);
    d["engine"] = "horco";
    if (v.certificate) {
      py::dict c;
      c["root"] = drule_name(v.certificate->rule);
      c["nodes"] = v.certificate->node_count();
      c["depth"] = v.certificate->depth();
      d["certificate"] = c;
    } else {
      d["certificate"] = py::none();
    }
    if (!v.note.empty()) d["note"] = v.note;
    return d;
  }

  py::dict check() const {
    SystemReport sr = engine->check_system();
    py::dict out;
    out["overall"] = status_word(sr.overall);
    py::list issues;
    for (const auto& v : sr.sig_violations) issues.append(v.message);
    for (const auto& t : sr.theory_issues)
      issues.append(std::string(theory_issue_name(t.kind)) + ": " + t.rule_text);
    out["issues"] = issues;
    py::list rules_out;
    for (std::size_t i = 0; i < sr.rule_verdicts.size(); ++i) {
      const auto& rule = sys().rules[i];
      rules_out.append(verdict_to_dict(sr.rule_verdicts[i], rule.text.empty() ? rule.show() : rule.text));
    }
    out["rules"] = rules_out;
    return out;
  }

  py::dict check_rule(std::size_t index) const {
    if (index >= sys().rules.size()) throw py::index_error("rule index out of range");
    const auto& rule = sys().rules[index];
    Verdict v = engine->check_rule(rule);
    return verdict_to_dict(v, rule.text.empty() ? rule.show() : rule.text);
  }

  bool validate_rule_certificate(std::size_t index) const {
    if (index >= sys().rules.size()) throw py::index_error("rule index out of range");
    const auto& rule = sys().rules[index];
    Verdict v = engine->check_rule(rule);
    if (v.status != Tri::Yes) return false;
    return engine->validate_certificate(v.certificate, &rule.env);
  }

  std::string compare(const std::string& engine_name, const std::string& lhs,
                      const std::string& rhs) const {
    TypingEnv env;
    auto [t, u] = parse_term_pair(lhs, rhs, engine->signature(), env);
    CmpOutcome r;
    if (engine_name == "rpo")
      r = rpo_greater(engine->signature(), env, t, u);
    else if (engine_name == "forco")
      r = forco_greater(engine->signature(), env, t, u);
    else if (engine_name == "horpo")
      r = horpo_greater(engine->signature(), env, t, u);
    else if (engine_name == "whorco")
      r = engine->whorco_greater(t, u, env);
    else
      r = engine->horco_greater(t, u, env);
    return tri_name(r.tri);
  }

  std::vector<int> acc_args(const std::string& symbol, const std::string& mode) const {
    auto s = accessible_args(engine->signature(), symbol,
                             mode == "base" ? AccMode::BaseOnly : AccMode::Positive);
    return {s.begin(), s.end()};
  }

  bool miller(const std::string& text) const {
    TypingEnv env;
    Term t = parse_term(text, engine->signature(), env);
    return is_miller_pattern(t);
  }

  std::string pretty() const { return print_system(sys()); }
};

PySystem load_system(const std::string& text, const std::string& acc, const std::string& call_order,
                     bool patterns, bool red, bool strengthen, int depth, int trans) {
  RewriteSystem sys = parse_system(text);
  sys.config = config_from_kwargs(acc, call_order, patterns, red, strengthen, depth, trans);
  return PySystem{std::make_shared<OrientEngine>(std::move(sys))};
}

}  // namespace

PYBIND11_MODULE(horco, m) {
  m.doc() = "Rule orientation for simply-typed higher-order rewriting: RPO, the recursive "
            "computability ordering, HORPO and the computability-closure ordering HORCO, with "
            "replayable certificates.";

  py::register_exception<Error>(m, "HorcoError");

  py::class_<PySystem>(m, "System")
      .def_property_readonly("rules", &PySystem::rules)
      .def("check", &PySystem::check, "Check every rule; returns a report dict.")
      .def("check_rule", &PySystem::check_rule, py::arg("index"))
      .def("validate_rule_certificate", &PySystem::validate_rule_certificate, py::arg("index"),
           "Re-derive the rule's certificate and replay it.")
      .def("compare", &PySystem::compare, py::arg("engine"), py::arg("lhs"), py::arg("rhs"),
           "Compare two terms under rpo, forco, horpo, whorco or horco.")
      .def("accessible_args", &PySystem::acc_args, py::arg("symbol"), py::arg("mode") = "positive")
      .def("is_miller_pattern", &PySystem::miller, py::arg("term"))
      .def("pretty", &PySystem::pretty);

  m.def("load_system", &load_system, py::arg("text"), py::arg("acc") = "positive",
        py::arg("call_order") = "acc", py::arg("patterns") = false, py::arg("red") = false,
        py::arg("strengthen") = false, py::arg("depth") = 12, py::arg("trans") = 3,
        "Parse a system file and build a checking engine.");
}
