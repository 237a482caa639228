#pragma once

#include <string>
#include <vector>

#include "horco/signature.hpp"
#include "horco/term.hpp"
#include "horco/type_acc.hpp"
#include "horco/typing.hpp"

namespace horco {

enum class CallOrder { Subterm, Accessibility, RecursiveHorco };

const char* call_order_name(CallOrder c);

struct ClosureConfig {
  AccMode acc_mode = AccMode::Positive;
  CallOrder call_order = CallOrder::Accessibility;
  bool miller_rules = false;     // (decomp-lam), (decomp-app-left)
  bool red_rule = false;         // the (red) closure extension
  bool strengthen_call = false;  // (call) compares via horco instead of whorco
  int depth_budget = 12;
  int trans_budget = 3;
};

struct RewriteRule {
  Term lhs, rhs;
  TypingEnv env;  // rule-variable typings
  std::string text;

  std::string show() const { return lhs.show() + " -> " + rhs.show(); }
};

struct RewriteSystem {
  SignatureConfig sig;
  std::vector<RewriteRule> rules;
  std::vector<RewriteRule> theory;
  ClosureConfig config;
};

}  // namespace horco
