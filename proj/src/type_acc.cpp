#include "horco/type_acc.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace horco {

const char* acc_mode_name(AccMode m) { return m == AccMode::BaseOnly ? "base" : "positive"; }

std::vector<Position> pos_of_base(const std::string& base, const Type& type) {
  std::vector<Position> out;
  for (const Position& p : type.positions()) {
    const Type& sub = type.subtype_at(p);
    if (sub.is_base() && sub.base_name() == base) out.push_back(p);
  }
  return out;
}

namespace {
void pos_signed_rec(const Type& t, bool positive, Position& cur, std::vector<Position>& out) {
  if (t.is_base()) {
    if (positive) out.push_back(cur);
    return;
  }
  cur.push_back(1);
  pos_signed_rec(t.domain(), !positive, cur, out);
  cur.back() = 2;
  pos_signed_rec(t.codomain(), positive, cur, out);
  cur.pop_back();
}
}  // namespace

std::vector<Position> pos_signed(const Type& type, Sign sign) {
  std::vector<Position> out;
  Position cur;
  pos_signed_rec(type, sign == Sign::Plus, cur, out);
  return out;
}

std::set<int> accessible_args(const Signature& sig, const std::string& f, AccMode mode) {
  const Type& tf = sig.symbol_type(f);
  std::vector<Type> doms = tf.domains();
  const std::string& base = tf.result().base_name();
  std::set<int> out;
  for (std::size_t i = 0; i < doms.size(); ++i) {
    const Type& ti = doms[i];
    if (mode == AccMode::BaseOnly) {
      if (ti.is_base()) out.insert(static_cast<int>(i) + 1);
      continue;
    }
    auto occs = pos_of_base(base, ti);
    auto pos = pos_signed(ti, Sign::Plus);
    bool all_positive = std::all_of(occs.begin(), occs.end(), [&](const Position& p) {
      return std::find(pos.begin(), pos.end(), p) != pos.end();
    });
    if (all_positive) out.insert(static_cast<int>(i) + 1);
  }
  return out;
}

bool beta_reaches(const Term& from, const Term& to, int max_nodes, std::vector<Term>* path) {
  if (from == to) {
    if (path) path->clear();
    return true;
  }
  std::deque<Term> queue{from};
  std::unordered_map<Term, Term, TermHash> parent;
  std::unordered_set<Term, TermHash> seen{from};
  int expanded = 0;
  while (!queue.empty() && expanded < max_nodes) {
    Term cur = queue.front();
    queue.pop_front();
    ++expanded;
    for (const Term& next : beta_reducts(cur)) {
      if (!seen.insert(next).second) continue;
      parent.emplace(next, cur);
      if (next == to) {
        if (path) {
          std::vector<Term> steps;
          Term walk = next;
          while (!(walk == from)) {
            steps.push_back(walk);
            walk = parent.at(walk);
          }
          std::reverse(steps.begin(), steps.end());
          *path = std::move(steps);
        }
        return true;
      }
      queue.push_back(next);
    }
  }
  return false;
}

namespace {

struct TermPairEq {
  bool operator()(const std::pair<Term, Term>& a, const std::pair<Term, Term>& b) const {
    return a.first == b.first && a.second == b.second;
  }
};

struct AccSearch {
  const Signature& sig;
  AccMode mode;
  Term anchor;
  std::set<std::string> anchor_fv;
  int* counter;
  int local_counter = 0;
  bool limited = false;
  std::unordered_map<std::pair<Term, Term>, CmpOutcome, TermPairHash, TermPairEq> memo;
  std::unordered_set<std::pair<Term, Term>, TermPairHash, TermPairEq> visiting;

  AccSearch(const Signature& s, AccMode m, Term l, int* c)
      : sig(s), mode(m), anchor(std::move(l)), anchor_fv(free_vars(anchor)), counter(c) {}

  std::string fresh() {
    int& n = counter ? *counter : local_counter;
    return "^a" + std::to_string(n++);
  }

  bool var_ok(const Term& t) const {
    return t.is(TermKind::FreeVar) && !anchor_fv.count(t.name());
  }

  DerivPtr base_node(const Term& a, const Term& b) const {
    return Derivation::make(DRule::AccBase, Judgment::order(RelTag::Acc, a, b, anchor));
  }

  // Wraps d (concluding a >^l w) into the (>red) chain along `steps` ending at b.
  DerivPtr red_chain(const Term& a, DerivPtr d, const std::vector<Term>& steps) const {
    for (const Term& s : steps)
      d = Derivation::make(DRule::AccRed, Judgment::order(RelTag::Acc, a, s, anchor), {d});
    return d;
  }

  CmpOutcome search(const Term& a, const Term& b, int budget) {
    if (a == b) return CmpOutcome::no();
    if (budget <= 0) {
      limited = true;
      return CmpOutcome::limited();
    }
    auto key = std::make_pair(a, b);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (!visiting.insert(key).second) return CmpOutcome::no();
    bool saw_limit_before = limited;
    limited = false;
    CmpOutcome result = search_core(a, b, budget);
    bool this_limited = limited;
    limited = saw_limit_before || this_limited;
    visiting.erase(key);
    // Yes verdicts and complete No verdicts are budget-independent.
    if (result.tri == Tri::Yes || (result.tri == Tri::No && !this_limited)) memo[key] = result;
    return result;
  }

  CmpOutcome search_core(const Term& a, const Term& b, int budget) {
    bool saw_limited = false;

    // (>lam): λx a' >^l b from a' >^l (b x), x fresh for b and l
    if (a.is(TermKind::Lam)) {
      Term z = Term::free_var(fresh());
      CmpOutcome r = search(open_with(a.body(), z), Term::app(b, z), budget - 1);
      if (r.tri == Tri::Yes)
        return CmpOutcome::yes_with(
            Derivation::make(DRule::AccLam, Judgment::order(RelTag::Acc, a, b, anchor), {r.deriv}));
      if (r.tri == Tri::DepthLimited) saw_limited = true;
    }

    // (>base): a = g ā fully applied at base type, b reachable from an
    // accessible argument applied to variables outside FV(l)
    auto [head, args] = spine(a);
    if (head.is(TermKind::Symbol) && sig.declared(head.name())) {
      const Type& tg = sig.symbol_type(head.name());
      if (tg.arity() == static_cast<int>(args.size()) && !args.empty()) {
        std::vector<Type> doms = tg.domains();
        for (int i : accessible_args(sig, head.name(), mode)) {
          const Term& ai = args[i - 1];
          const Type& ti = doms[i - 1];
          if (!(ti.result() == tg.result())) continue;
          int k = ti.arity();

          // direct match b = a_i v1..vk
          auto [core, vs] = strip_args(b, k);
          if (!core.empty() && core == ai &&
              std::all_of(vs.begin(), vs.end(), [&](const Term& v) { return var_ok(v); })) {
            return CmpOutcome::yes_with(base_node(a, b));
          }

          // candidate tuples: variables of b outside FV(l), plus one fresh
          // variable per slot, then close under β and (>trans)
          std::vector<Term> var_pool;
          for (const auto& v : free_vars(b))
            if (!anchor_fv.count(v)) var_pool.push_back(Term::free_var(v));
          var_pool.push_back(Term::free_var(fresh()));

          std::vector<std::vector<Term>> tuples{{}};
          for (int slot = 0; slot < k; ++slot) {
            std::vector<std::vector<Term>> next;
            for (const auto& tup : tuples)
              for (const Term& v : var_pool) {
                auto ext = tup;
                ext.push_back(v);
                next.push_back(std::move(ext));
              }
            tuples = std::move(next);
            if (tuples.size() > 256) {
              saw_limited = true;
              tuples.resize(256);
            }
          }

          for (const auto& tup : tuples) {
            Term w = Term::app(ai, tup);
            if (w == a) continue;
            if (w == b) return CmpOutcome::yes_with(base_node(a, b));
            std::vector<Term> path;
            if (beta_reaches(w, b, 128, &path))
              return CmpOutcome::yes_with(red_chain(a, base_node(a, w), path));
            CmpOutcome r = search(w, b, budget - 1);
            if (r.tri == Tri::Yes)
              return CmpOutcome::yes_with(Derivation::make(
                  DRule::AccTrans, Judgment::order(RelTag::Acc, a, b, anchor), {base_node(a, w), r.deriv}));
            if (r.tri == Tri::DepthLimited) saw_limited = true;
          }
        }
      }
    }

    if (saw_limited) {
      limited = true;
      return CmpOutcome::limited();
    }
    return CmpOutcome::no();
  }
};

}  // namespace

CmpOutcome acc_greater(const Signature& sig, AccMode mode, const Term& anchor, const Term& a,
                       const Term& b, int budget, int* counter) {
  AccSearch search(sig, mode, anchor, counter);
  return search.search(a, b, budget);
}

}  // namespace horco
