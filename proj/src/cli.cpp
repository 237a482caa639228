#include "horco/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "horco/enumerate.hpp"
#include "horco/error.hpp"
#include "horco/oracle.hpp"
#include "horco/parser.hpp"
#include "horco/report.hpp"

namespace horco {

namespace {

int exit_code_for(const Report& rep) {
  if (rep.any_malformed) return 3;
  bool any_no = !rep.issues.empty();
  bool any_dl = false;
  for (const auto& e : rep.entries) {
    if (e.status == "not-oriented") any_no = true;
    if (e.status == "depth-limited") any_dl = true;
  }
  if (any_no) return 1;
  if (any_dl) return 2;
  return 0;
}

// Same prologue as check_rule, for the self-contained orderings.
void require_wellformed(const RewriteRule& rule, const Signature& sig) {
  auto [head, ls] = spine(rule.lhs);
  (void)ls;
  if (!head.is(TermKind::Symbol)) fail(ErrorCode::MalformedRule, "lhs not symbol-headed: " + rule.show());
  if (!free_vars_subset(rule.rhs, rule.lhs))
    fail(ErrorCode::MalformedRule, "FV(rhs) not within FV(lhs): " + rule.show());
  Type tl = type_of(rule.lhs, rule.env, sig);
  Type tr = type_of(rule.rhs, rule.env, sig);
  if (!(tl == tr)) fail(ErrorCode::MalformedRule, "type mismatch in " + rule.show());
}

}  // namespace

bool run_selftest(std::ostream& out) {
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
    out << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) out << " (" << detail << ")";
    out << "\n";
    if (!ok) all_ok = false;
  };

  // rpo = forco on a small first-order space, and rpo agrees with the oracle
  {
    SignatureConfig cfg;
    Type N = Type::base("N");
    cfg.declare("0", N);
    cfg.declare("s", Type::arrow(N, N));
    cfg.declare("plus", Type::arrow({N, N}, N));
    cfg.prec_greater("plus", "s");
    cfg.prec_greater("s", "0");
    Signature sig(cfg);
    TypingEnv env{{"x", N}, {"y", N}};
    auto terms = enumerate_terms(sig, env, N, 4);
    std::erase_if(terms, [&](const Term& t) { return !is_first_order(t, env, sig); });
    RpoEngine rpo(sig, env);
    ForcoEngine forco(sig, env);
    int mismatches = 0, oracle_mismatches = 0, pairs = 0;
    for (const Term& t : terms)
      for (const Term& u : terms) {
        ++pairs;
        bool a = rpo.greater(t, u).yes();
        bool b = forco.greater(t, u).yes();
        if (a != b) ++mismatches;
        if (a != oracle_rpo(sig, env, t, u)) ++oracle_mismatches;
      }
    report("rpo equals forco on " + std::to_string(pairs) + " pairs", mismatches == 0,
           std::to_string(mismatches) + " disagreements");
    report("rpo agrees with the textbook oracle", oracle_mismatches == 0);
  }

  // enumerate counts match the recursive counter
  {
    SignatureConfig cfg;
    Type N = Type::base("N");
    Type T = Type::base("T");
    cfg.declare("0", N);
    cfg.declare("s", Type::arrow(N, N));
    cfg.declare("c", Type::arrow(N, T));
    Signature sig(cfg);
    TypingEnv env{{"x", N}};
    bool ok = true;
    for (const Type& ty : {N, T, Type::arrow(N, T)})
      for (int n = 1; n <= 6; ++n)
        if (static_cast<std::int64_t>(enumerate_terms(sig, env, ty, n, 12).size()) !=
            count_terms(sig, env, ty, n))
          ok = false;
    report("enumeration matches the independent counter", ok);
  }

  // recursor rules oriented
  {
    const char* goedel =
        "sig\n 0 : N\n s : N -> N\n rec : N -> T -> (N -> T -> T) -> T\n"
        "prec\n rec > s, 0\n"
        "status\n rec lex\n"
        "rules\n rec 0 u v -> u\n rec (s x) u v -> v x (rec x u v)\n";
    RewriteSystem sys = parse_system(goedel);
    sys.config.acc_mode = AccMode::BaseOnly;
    sys.config.call_order = CallOrder::Accessibility;
    OrientEngine eng(sys);
    SystemReport sr = eng.check_system();
    bool ok = sr.overall == Tri::Yes;
    for (std::size_t i = 0; i < sr.rule_verdicts.size(); ++i) {
      std::string why;
      if (sr.rule_verdicts[i].status == Tri::Yes &&
          !eng.validate_certificate(sr.rule_verdicts[i].certificate, &eng.system().rules[i].env, &why))
        ok = false;
    }
    report("recursor rules oriented with replayable certificates", ok);
  }

  return all_ok;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"termination criteria for higher-order rewrite rules"};
  std::string engine = "horco", acc = "positive", call_order = "acc", format = "text", file;
  bool patterns = false, red = false, strengthen = false, validate = false, selftest = false;
  int depth = 12, trans = 3;

  app.add_option("file", file, "system file");
  app.add_option("--engine", engine, "ordering engine")
      ->check(CLI::IsMember({"rpo", "forco", "horpo", "horco"}));
  app.add_option("--acc", acc, "accessibility mode")->check(CLI::IsMember({"base", "positive"}));
  app.add_option("--call-order", call_order, "argument comparison in (call)")
      ->check(CLI::IsMember({"subterm", "acc", "recursive"}));
  app.add_flag("--patterns", patterns, "enable the pattern decomposition rules");
  app.add_flag("--red", red, "enable the (red) closure rule");
  app.add_flag("--strengthen", strengthen, "compare (call) arguments with horco instead of whorco");
  app.add_option("--depth", depth, "search depth budget");
  app.add_option("--trans", trans, "transitive chaining budget");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--validate-certs", validate, "replay every certificate");
  app.add_flag("--selftest", selftest, "run the built-in enumeration checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp") {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 3;
  }

  if (selftest) return run_selftest(out) ? 0 : 1;

  if (file.empty()) {
    err << "error: no input file (try --help)\n";
    return 3;
  }
  std::ifstream in(file);
  if (!in) {
    err << "error: cannot read " << file << "\n";
    return 3;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  RewriteSystem sys;
  try {
    sys = parse_system(buffer.str());
  } catch (const Error& e) {
    err << "error: " << file << ": " << e.what() << "\n";
    return 3;
  }
  sys.config.acc_mode = acc == "base" ? AccMode::BaseOnly : AccMode::Positive;
  sys.config.call_order = call_order == "subterm"  ? CallOrder::Subterm
                          : call_order == "recursive" ? CallOrder::RecursiveHorco
                                                      : CallOrder::Accessibility;
  sys.config.miller_rules = patterns;
  sys.config.red_rule = red;
  sys.config.strengthen_call = strengthen;
  sys.config.depth_budget = depth;
  sys.config.trans_budget = trans;

  Report rep;
  OrientEngine eng(sys);
  try {
    if (engine == "horco") {
      SystemReport sr = eng.check_system();
      rep = make_report(engine, sr, eng.system().rules);
    } else {
      if (!sys.theory.empty()) {
        err << "error: a theory section requires --engine horco\n";
        return 3;
      }
      SystemReport sr;
      sr.sig_violations = eng.signature().violations();
      for (const auto& rule : eng.system().rules) {
        require_wellformed(rule, eng.signature());
        auto start = std::chrono::steady_clock::now();
        CmpOutcome r;
        if (engine == "rpo")
          r = rpo_greater(eng.signature(), rule.env, rule.lhs, rule.rhs);
        else if (engine == "forco")
          r = forco_greater(eng.signature(), rule.env, rule.lhs, rule.rhs);
        else
          r = horpo_greater(eng.signature(), rule.env, rule.lhs, rule.rhs);
        Verdict v;
        v.status = r.tri;
        v.certificate = r.deriv;
        v.millis =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        sr.rule_verdicts.push_back(std::move(v));
      }
      bool any_no = false, any_dl = false;
      for (const auto& v : sr.rule_verdicts) {
        any_no |= v.status == Tri::No;
        any_dl |= v.status == Tri::DepthLimited;
      }
      sr.overall = !sr.sig_violations.empty() || any_no ? Tri::No : (any_dl ? Tri::DepthLimited : Tri::Yes);
      rep = make_report(engine, sr, eng.system().rules);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  bool certs_ok = true;
  if (validate) {
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
      auto& e = rep.entries[i];
      if (!e.certificate) continue;
      std::string why;
      e.cert_valid = eng.validate_certificate(e.certificate, &eng.system().rules[i].env, &why);
      if (!e.cert_valid) {
        err << "certificate replay failed for rule " << i << ": " << why << "\n";
        certs_ok = false;
      }
    }
  }

  out << (format == "json" ? report_to_json(rep) : report_to_text(rep));
  if (!certs_ok) return 3;
  return exit_code_for(rep);
}

}  // namespace horco
