#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "horco/type.hpp"

namespace horco {

enum class StatusKind { LexLR, LexRL, Mul };

const char* status_name(StatusKind s);

enum class PrecRel { Greater, Less, Equivalent, Incomparable };

/// Raw symbol declarations, precedence declarations and statuses, as parsed.
struct SignatureConfig {
  struct PrecDecl {
    std::string f, g;
    bool equiv = false;  // false: f > g
  };

  std::vector<std::pair<std::string, Type>> symbols;  // declaration order
  std::vector<PrecDecl> prec_decls;
  std::map<std::string, StatusKind> status;

  void declare(const std::string& name, Type type);
  void prec_greater(const std::string& f, const std::string& g);
  void prec_equiv(const std::string& f, const std::string& g);
};

struct Violation {
  enum class Kind { PrecedenceCycle, StatusMismatch, UndeclaredSymbol };
  Kind kind;
  std::vector<std::string> symbols;
  std::string message;
};

/// Compiled signature: equivalence classes, transitive strict precedence,
/// per-class status. Immutable after construction; queries are pure.
class Signature {
 public:
  Signature() = default;
  explicit Signature(SignatureConfig config);

  const SignatureConfig& config() const { return config_; }
  const std::vector<Violation>& violations() const { return violations_; }
  bool ok() const { return violations_.empty(); }

  bool declared(const std::string& name) const;
  const Type& symbol_type(const std::string& name) const;  // throws UndeclaredSymbol

  PrecRel prec_compare(const std::string& f, const std::string& g) const;
  StatusKind status_of(const std::string& f) const;

  /// All declared symbol names in declaration order.
  std::vector<std::string> symbol_names() const;

 private:
  int class_of(const std::string& name) const;  // throws UndeclaredSymbol

  SignatureConfig config_;
  std::vector<Violation> violations_;
  std::map<std::string, Type> types_;
  std::map<std::string, int> class_index_;
  std::vector<std::vector<bool>> reach_;  // strict class reachability
  std::vector<StatusKind> class_status_;
};

}  // namespace horco
