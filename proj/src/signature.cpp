#include "horco/signature.hpp"

#include <algorithm>
#include <set>

#include "horco/error.hpp"

namespace horco {

const char* status_name(StatusKind s) {
  switch (s) {
    case StatusKind::LexLR: return "lex";
    case StatusKind::LexRL: return "lexrl";
    case StatusKind::Mul: return "mul";
  }
  return "?";
}

void SignatureConfig::declare(const std::string& name, Type type) {
  symbols.emplace_back(name, std::move(type));
}

void SignatureConfig::prec_greater(const std::string& f, const std::string& g) {
  prec_decls.push_back({f, g, false});
}

void SignatureConfig::prec_equiv(const std::string& f, const std::string& g) {
  prec_decls.push_back({f, g, true});
}

namespace {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};
}  // namespace

Signature::Signature(SignatureConfig config) : config_(std::move(config)) {
  std::map<std::string, int> sym_index;
  for (const auto& [name, type] : config_.symbols) {
    if (types_.count(name)) {
      violations_.push_back({Violation::Kind::UndeclaredSymbol, {name}, "symbol declared twice: " + name});
      continue;
    }
    sym_index[name] = static_cast<int>(sym_index.size());
    types_[name] = type;
  }

  auto check_declared = [&](const std::string& name) {
    if (sym_index.count(name)) return true;
    violations_.push_back({Violation::Kind::UndeclaredSymbol, {name}, "undeclared symbol: " + name});
    return false;
  };
  for (const auto& d : config_.prec_decls) {
    check_declared(d.f);
    check_declared(d.g);
  }
  for (const auto& [name, st] : config_.status) {
    (void)st;
    check_declared(name);
  }

  int n = static_cast<int>(sym_index.size());
  UnionFind uf(n);
  for (const auto& d : config_.prec_decls) {
    if (d.equiv && sym_index.count(d.f) && sym_index.count(d.g))
      uf.unite(sym_index[d.f], sym_index[d.g]);
  }

  // Dense class ids in declaration order.
  std::map<int, int> root_to_class;
  std::vector<std::vector<std::string>> class_members;
  for (const auto& [name, type] : config_.symbols) {
    (void)type;
    auto it = sym_index.find(name);
    if (it == sym_index.end()) continue;
    int root = uf.find(it->second);
    auto [cit, inserted] = root_to_class.emplace(root, static_cast<int>(class_members.size()));
    if (inserted) class_members.emplace_back();
    class_index_[name] = cit->second;
    class_members[cit->second].push_back(name);
  }
  int nc = static_cast<int>(class_members.size());

  std::vector<std::set<int>> edges(nc);
  for (const auto& d : config_.prec_decls) {
    if (d.equiv) continue;
    auto fi = class_index_.find(d.f);
    auto gi = class_index_.find(d.g);
    if (fi == class_index_.end() || gi == class_index_.end()) continue;
    edges[fi->second].insert(gi->second);
  }

  reach_.assign(nc, std::vector<bool>(nc, false));
  for (int c = 0; c < nc; ++c)
    for (int d : edges[c]) reach_[c][d] = true;
  for (int k = 0; k < nc; ++k)
    for (int i = 0; i < nc; ++i)
      if (reach_[i][k])
        for (int j = 0; j < nc; ++j)
          if (reach_[k][j]) reach_[i][j] = true;

  for (int c = 0; c < nc; ++c) {
    if (reach_[c][c])
      violations_.push_back({Violation::Kind::PrecedenceCycle, class_members[c],
                             "precedence cycle through class of " + class_members[c].front()});
  }

  // Per-class status: explicit declarations must agree; members without a
  // declaration inherit; a class with none defaults to lex.
  class_status_.assign(nc, StatusKind::LexLR);
  for (int c = 0; c < nc; ++c) {
    std::optional<StatusKind> st;
    std::string first_decl;
    for (const auto& m : class_members[c]) {
      auto it = config_.status.find(m);
      if (it == config_.status.end()) continue;
      if (!st) {
        st = it->second;
        first_decl = m;
      } else if (*st != it->second) {
        violations_.push_back({Violation::Kind::StatusMismatch,
                               {first_decl, m},
                               "status mismatch in equivalence class: " + first_decl + " is " +
                                   status_name(*st) + ", " + m + " is " + status_name(it->second)});
      }
    }
    if (st) class_status_[c] = *st;
  }
}

bool Signature::declared(const std::string& name) const { return types_.count(name) > 0; }

const Type& Signature::symbol_type(const std::string& name) const {
  auto it = types_.find(name);
  if (it == types_.end()) fail(ErrorCode::UndeclaredSymbol, name);
  return it->second;
}

int Signature::class_of(const std::string& name) const {
  auto it = class_index_.find(name);
  if (it == class_index_.end()) fail(ErrorCode::UndeclaredSymbol, name);
  return it->second;
}

PrecRel Signature::prec_compare(const std::string& f, const std::string& g) const {
  int cf = class_of(f), cg = class_of(g);
  if (cf == cg) return PrecRel::Equivalent;
  if (reach_[cf][cg]) return PrecRel::Greater;
  if (reach_[cg][cf]) return PrecRel::Less;
  return PrecRel::Incomparable;
}

StatusKind Signature::status_of(const std::string& f) const { return class_status_[class_of(f)]; }

std::vector<std::string> Signature::symbol_names() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& [name, type] : config_.symbols) {
    (void)type;
    if (seen.insert(name).second) out.push_back(name);
  }
  return out;
}

}  // namespace horco
