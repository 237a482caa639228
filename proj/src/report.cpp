#include "horco/report.hpp"

#include <sstream>

#include <json.hpp>

namespace horco {

std::string status_word(Tri t) {
  switch (t) {
    case Tri::Yes: return "oriented";
    case Tri::No: return "not-oriented";
    case Tri::DepthLimited: return "depth-limited";
  }
  return "?";
}

Report make_report(const std::string& engine, const SystemReport& sys_report,
                   const std::vector<RewriteRule>& rules) {
  Report rep;
  rep.engine = engine;
  for (const auto& v : sys_report.sig_violations) rep.issues.push_back(v.message);
  for (const auto& t : sys_report.theory_issues) {
    rep.issues.push_back(std::string(theory_issue_name(t.kind)) + ": " + t.rule_text + " (" + t.message + ")");
    if (t.kind == TheoryIssue::Kind::Malformed) rep.any_malformed = true;
  }
  for (std::size_t i = 0; i < sys_report.rule_verdicts.size() && i < rules.size(); ++i) {
    const Verdict& v = sys_report.rule_verdicts[i];
    Report::Entry e;
    e.rule = rules[i].text.empty() ? rules[i].show() : rules[i].text;
    e.engine = engine;
    e.status = status_word(v.status);
    e.note = v.note;
    e.millis = v.millis;
    e.certificate = v.certificate;
    rep.entries.push_back(std::move(e));
  }
  rep.overall = status_word(sys_report.overall);
  return rep;
}

std::string report_to_text(const Report& rep) {
  std::ostringstream out;
  for (const auto& msg : rep.issues) out << "issue: " << msg << "\n";
  for (const auto& e : rep.entries) {
    out << "[" << e.status << "] " << e.rule;
    if (e.certificate) out << "  (" << e.certificate->node_count() << " nodes";
    if (e.certificate) out << ", " << (e.millis < 0.1 ? "<0.1" : std::to_string(e.millis).substr(0, 5)) << " ms)";
    if (!e.certificate && e.millis > 0) out << "  (" << std::to_string(e.millis).substr(0, 5) << " ms)";
    if (!e.note.empty()) out << "  -- " << e.note;
    if (!e.cert_valid) out << "  ** certificate INVALID **";
    out << "\n";
  }
  out << "overall: " << rep.overall << "\n";
  return out.str();
}

namespace {
nlohmann::json cert_summary(const DerivPtr& d) {
  if (!d) return nullptr;
  nlohmann::json j;
  j["root"] = drule_name(d->rule);
  j["conclusion"] = d->concl.show();
  j["nodes"] = d->node_count();
  j["depth"] = d->depth();
  std::set<std::string> used;
  std::function<void(const DerivPtr&)> walk = [&](const DerivPtr& n) {
    used.insert(drule_name(n->rule));
    for (const auto& p : n->premises) walk(p);
  };
  walk(d);
  j["rules"] = used;
  return j;
}
}  // namespace

std::string report_to_json(const Report& rep) {
  nlohmann::json j;
  j["engine"] = rep.engine;
  j["overall"] = rep.overall;
  j["issues"] = rep.issues;
  j["rules"] = nlohmann::json::array();
  for (const auto& e : rep.entries) {
    nlohmann::json r;
    r["rule"] = e.rule;
    r["status"] = e.status;
    r["engine"] = e.engine;
    r["certificate"] = cert_summary(e.certificate);
    r["millis"] = e.millis;
    if (!e.note.empty()) r["note"] = e.note;
    if (!e.cert_valid) r["certificate_valid"] = false;
    j["rules"].push_back(std::move(r));
  }
  return j.dump(2);
}

}  // namespace horco
