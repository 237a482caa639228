#pragma once

#include <memory>
#include <string>
#include <vector>

namespace horco {

/// A path into a type or term: a word over {1,2}.
/// For arrow types, 1 addresses the domain and 2 the codomain.
/// For terms, 1 addresses the function (or the λ body), 2 the argument.
using Position = std::vector<int>;

std::string show_position(const Position& p);

/// Simple types: base names and binary arrows. Values are immutable and
/// shared; equality is structural.
class Type {
 public:
  Type() = default;

  static Type base(std::string name);
  static Type arrow(Type domain, Type codomain);
  /// Folds domains right-associatively onto `result`.
  static Type arrow(const std::vector<Type>& domains, Type result);

  bool empty() const { return node_ == nullptr; }
  bool is_base() const;
  bool is_arrow() const;

  const std::string& base_name() const;
  const Type& domain() const;
  const Type& codomain() const;

  /// Full unrolling T1 -> ... -> Tn -> B: the list T1..Tn.
  std::vector<Type> domains() const;
  /// Full unrolling: the final base type B.
  const Type& result() const;
  /// Number of domains in the full unrolling.
  int arity() const;

  std::size_t hash() const;
  bool operator==(const Type& other) const;
  bool operator!=(const Type& other) const { return !(*this == other); }

  std::string show() const;

  /// All positions of this type, root first, in depth-first 1-before-2 order.
  std::vector<Position> positions() const;
  const Type& subtype_at(const Position& p) const;

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

}  // namespace horco
