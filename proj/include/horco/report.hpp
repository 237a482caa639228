#pragma once

#include <string>
#include <vector>

#include "horco/engine.hpp"

namespace horco {

/// Per-rule record of a checking run, plus the overall outcome. Overall is
/// "oriented" iff every rule record is oriented and no issue was raised.
struct Report {
  struct Entry {
    std::string rule;
    std::string engine;
    std::string status;  // oriented | not-oriented | depth-limited
    std::string note;
    double millis = 0.0;
    DerivPtr certificate;
    bool cert_valid = true;  // when --validate-certs ran
  };

  std::string engine;
  std::vector<Entry> entries;
  std::vector<std::string> issues;
  std::string overall;

  bool any_malformed = false;
};

std::string status_word(Tri t);

Report make_report(const std::string& engine, const SystemReport& sys_report,
                   const std::vector<RewriteRule>& rules);

std::string report_to_text(const Report& rep);
std::string report_to_json(const Report& rep);

}  // namespace horco
