#include "horco/term.hpp"

#include <algorithm>
#include <functional>

#include "horco/error.hpp"

namespace horco {

struct Term::Node {
  TermKind kind;
  std::string name;  // Symbol, FreeVar
  int index = 0;     // BoundVar
  Type annot;        // Lam
  Term sub1;         // App fun, Lam body
  Term sub2;         // App arg
  std::size_t hash = 0;
  int size = 0;
  int level = 0;  // 0 = locally closed
};

namespace {
std::size_t mix(std::size_t a, std::size_t b) { return a * 0x9e3779b97f4a7c15ull + b + 0x7f4a7c15u; }
}  // namespace

Term Term::symbol(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Symbol;
  n->name = std::move(name);
  n->hash = mix(1, std::hash<std::string>{}(n->name));
  n->size = 1;
  return Term(std::move(n));
}

Term Term::free_var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::FreeVar;
  n->name = std::move(name);
  n->hash = mix(2, std::hash<std::string>{}(n->name));
  n->size = 1;
  return Term(std::move(n));
}

Term Term::bound_var(int index) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::BoundVar;
  n->index = index;
  n->hash = mix(3, static_cast<std::size_t>(index));
  n->size = 1;
  n->level = index + 1;
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->sub1 = std::move(fun);
  n->sub2 = std::move(arg);
  n->hash = mix(4, mix(n->sub1.hash(), n->sub2.hash()));
  n->size = n->sub1.size() + n->sub2.size();
  n->level = std::max(n->sub1.level(), n->sub2.level());
  return Term(std::move(n));
}

Term Term::app(Term fun, const std::vector<Term>& args) {
  Term t = std::move(fun);
  for (const Term& a : args) t = app(t, a);
  return t;
}

Term Term::lam(Type annot, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Lam;
  n->annot = std::move(annot);
  n->sub1 = std::move(body);
  n->hash = mix(5, mix(n->annot.hash(), n->sub1.hash()));
  n->size = 2 + n->sub1.size();
  n->level = std::max(n->sub1.level() - 1, 0);
  return Term(std::move(n));
}

namespace {
Term close_rec(const Term& t, const std::string& name, int depth) {
  switch (t.kind()) {
    case TermKind::FreeVar:
      return t.name() == name ? Term::bound_var(depth) : t;
    case TermKind::Symbol:
    case TermKind::BoundVar:
      return t;
    case TermKind::App:
      return Term::app(close_rec(t.fun(), name, depth), close_rec(t.arg(), name, depth));
    case TermKind::Lam:
      return Term::lam(t.annot(), close_rec(t.body(), name, depth + 1));
  }
  return t;
}
}  // namespace

Term Term::bind(const std::string& name, Type annot, Term body) {
  return lam(std::move(annot), close_rec(body, name, 0));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
int Term::index() const { return node_->index; }
const Term& Term::fun() const { return node_->sub1; }
const Term& Term::arg() const { return node_->sub2; }
const Type& Term::annot() const { return node_->annot; }
const Term& Term::body() const { return node_->sub1; }
int Term::size() const { return node_ ? node_->size : 0; }
int Term::level() const { return node_ ? node_->level : 0; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->hash != other.node_->hash || node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case TermKind::Symbol:
    case TermKind::FreeVar:
      return node_->name == other.node_->name;
    case TermKind::BoundVar:
      return node_->index == other.node_->index;
    case TermKind::App:
      return node_->sub1 == other.node_->sub1 && node_->sub2 == other.node_->sub2;
    case TermKind::Lam:
      return node_->annot == other.node_->annot && node_->sub1 == other.node_->sub1;
  }
  return false;
}

std::pair<Term, std::vector<Term>> spine(const Term& t) {
  std::vector<Term> args;
  Term head = t;
  while (head.is(TermKind::App)) {
    args.push_back(head.arg());
    head = head.fun();
  }
  std::reverse(args.begin(), args.end());
  return {head, std::move(args)};
}

std::pair<Term, std::vector<Term>> strip_args(const Term& t, int k) {
  std::vector<Term> args;
  Term core = t;
  for (int i = 0; i < k; ++i) {
    if (!core.is(TermKind::App)) return {Term(), {}};
    args.push_back(core.arg());
    core = core.fun();
  }
  std::reverse(args.begin(), args.end());
  return {core, std::move(args)};
}

namespace {
void collect_free(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::FreeVar: out.insert(t.name()); break;
    case TermKind::App:
      collect_free(t.fun(), out);
      collect_free(t.arg(), out);
      break;
    case TermKind::Lam: collect_free(t.body(), out); break;
    default: break;
  }
}
}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  if (!t.empty()) collect_free(t, out);
  return out;
}

bool has_free_var(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case TermKind::FreeVar: return t.name() == name;
    case TermKind::App: return has_free_var(t.fun(), name) || has_free_var(t.arg(), name);
    case TermKind::Lam: return has_free_var(t.body(), name);
    default: return false;
  }
}

bool free_vars_subset(const Term& a, const Term& b) {
  auto fb = free_vars(b);
  for (const auto& x : free_vars(a))
    if (!fb.count(x)) return false;
  return true;
}

Term substitute(const Term& t, const std::string& name, const Term& u) {
  switch (t.kind()) {
    case TermKind::FreeVar: return t.name() == name ? u : t;
    case TermKind::Symbol:
    case TermKind::BoundVar:
      return t;
    case TermKind::App: {
      Term f = substitute(t.fun(), name, u);
      Term a = substitute(t.arg(), name, u);
      return (f == t.fun() && a == t.arg()) ? t : Term::app(f, a);
    }
    case TermKind::Lam: {
      Term b = substitute(t.body(), name, u);
      return b == t.body() ? t : Term::lam(t.annot(), b);
    }
  }
  return t;
}

namespace {
// Replaces references to the binder `depth` levels above `t`'s root by `u`
// (locally closed) and pulls deeper dangling references down by one.
Term open_rec(const Term& t, const Term& u, int depth) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      if (t.index() == depth) return u;
      if (t.index() > depth) return Term::bound_var(t.index() - 1);
      return t;
    case TermKind::Symbol:
    case TermKind::FreeVar:
      return t;
    case TermKind::App:
      return Term::app(open_rec(t.fun(), u, depth), open_rec(t.arg(), u, depth));
    case TermKind::Lam:
      return Term::lam(t.annot(), open_rec(t.body(), u, depth + 1));
  }
  return t;
}
}  // namespace

Term open_with(const Term& body, const Term& u) {
  if (body.level() == 0) return body;
  return open_rec(body, u, 0);
}

std::string fresh_name(const std::string& base, const std::vector<Term>& avoid) {
  std::set<std::string> used;
  for (const Term& t : avoid)
    if (!t.empty()) collect_free(t, used);
  if (!used.count(base)) return base;
  for (int i = 0;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

bool valid_position(const Term& t, const Position& p) {
  Term cur = t;
  for (int step : p) {
    if (cur.is(TermKind::App)) {
      if (step == 1)
        cur = cur.fun();
      else if (step == 2)
        cur = cur.arg();
      else
        return false;
    } else if (cur.is(TermKind::Lam) && step == 1) {
      cur = cur.body();
    } else {
      return false;
    }
  }
  return true;
}

Term subterm_at(const Term& t, const Position& p) {
  Term cur = t;
  for (int step : p) {
    if (cur.is(TermKind::App) && step == 1)
      cur = cur.fun();
    else if (cur.is(TermKind::App) && step == 2)
      cur = cur.arg();
    else if (cur.is(TermKind::Lam) && step == 1)
      cur = cur.body();
    else
      fail(ErrorCode::InvalidPosition, show_position(p) + " not in " + t.show());
  }
  return cur;
}

Term replace_at(const Term& t, const Position& p, const Term& u) {
  std::function<Term(const Term&, std::size_t)> go = [&](const Term& cur, std::size_t i) -> Term {
    if (i == p.size()) return u;
    int step = p[i];
    if (cur.is(TermKind::App) && step == 1) return Term::app(go(cur.fun(), i + 1), cur.arg());
    if (cur.is(TermKind::App) && step == 2) return Term::app(cur.fun(), go(cur.arg(), i + 1));
    if (cur.is(TermKind::Lam) && step == 1) return Term::lam(cur.annot(), go(cur.body(), i + 1));
    fail(ErrorCode::InvalidPosition, show_position(p) + " not in " + t.show());
  };
  return go(t, 0);
}

std::vector<Position> positions_of(const Term& t) {
  std::vector<Position> out;
  Position cur;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    out.push_back(cur);
    if (u.is(TermKind::App)) {
      cur.push_back(1);
      walk(u.fun());
      cur.back() = 2;
      walk(u.arg());
      cur.pop_back();
    } else if (u.is(TermKind::Lam)) {
      cur.push_back(1);
      walk(u.body());
      cur.pop_back();
    }
  };
  walk(t);
  return out;
}

std::vector<Term> beta_reducts(const Term& t) {
  std::vector<Term> out;
  std::function<void(const Term&, const std::function<Term(Term)>&)> walk =
      [&](const Term& u, const std::function<Term(Term)>& rebuild) {
        if (u.is(TermKind::App)) {
          if (u.fun().is(TermKind::Lam)) out.push_back(rebuild(open_with(u.fun().body(), u.arg())));
          walk(u.fun(), [&](Term v) { return rebuild(Term::app(std::move(v), u.arg())); });
          walk(u.arg(), [&](Term v) { return rebuild(Term::app(u.fun(), std::move(v))); });
        } else if (u.is(TermKind::Lam)) {
          walk(u.body(), [&](Term v) { return rebuild(Term::lam(u.annot(), std::move(v))); });
        }
      };
  walk(t, [](Term v) { return v; });
  return out;
}

bool is_beta_normal(const Term& t) {
  switch (t.kind()) {
    case TermKind::App:
      if (t.fun().is(TermKind::Lam)) return false;
      return is_beta_normal(t.fun()) && is_beta_normal(t.arg());
    case TermKind::Lam:
      return is_beta_normal(t.body());
    default:
      return true;
  }
}

namespace {
// Contracts the leftmost-outermost redex; empty result when normal.
Term lo_step(const Term& t) {
  switch (t.kind()) {
    case TermKind::App: {
      if (t.fun().is(TermKind::Lam)) return open_with(t.fun().body(), t.arg());
      Term f = lo_step(t.fun());
      if (!f.empty()) return Term::app(f, t.arg());
      Term a = lo_step(t.arg());
      if (!a.empty()) return Term::app(t.fun(), a);
      return Term();
    }
    case TermKind::Lam: {
      Term b = lo_step(t.body());
      if (!b.empty()) return Term::lam(t.annot(), b);
      return Term();
    }
    default:
      return Term();
  }
}
}  // namespace

Term beta_normalize(const Term& t, int max_steps) {
  Term cur = t;
  for (int i = 0; i < max_steps; ++i) {
    Term next = lo_step(cur);
    if (next.empty()) return cur;
    cur = next;
  }
  fail(ErrorCode::InternalLimit, "beta normalization exceeded " + std::to_string(max_steps) + " steps");
}

namespace {
// Does t reference the binder `k` levels above its root?
bool occurs_bound(const Term& t, int k) {
  switch (t.kind()) {
    case TermKind::BoundVar: return t.index() == k;
    case TermKind::App: return occurs_bound(t.fun(), k) || occurs_bound(t.arg(), k);
    case TermKind::Lam: return occurs_bound(t.body(), k + 1);
    default: return false;
  }
}

// Decrements dangling references strictly above the removed binder.
Term shift_down(const Term& t, int depth) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      return t.index() > depth ? Term::bound_var(t.index() - 1) : t;
    case TermKind::App:
      return Term::app(shift_down(t.fun(), depth), shift_down(t.arg(), depth));
    case TermKind::Lam:
      return Term::lam(t.annot(), shift_down(t.body(), depth + 1));
    default:
      return t;
  }
}
}  // namespace

Term eta_normalize(const Term& t) {
  switch (t.kind()) {
    case TermKind::App:
      return Term::app(eta_normalize(t.fun()), eta_normalize(t.arg()));
    case TermKind::Lam: {
      Term b = eta_normalize(t.body());
      if (b.is(TermKind::App) && b.arg().is(TermKind::BoundVar) && b.arg().index() == 0 &&
          !occurs_bound(b.fun(), 0)) {
        return eta_normalize(shift_down(b.fun(), 0));
      }
      return Term::lam(t.annot(), b);
    }
    default:
      return t;
  }
}

bool is_algebraic(const Term& t) {
  switch (t.kind()) {
    case TermKind::Lam: return false;
    case TermKind::App: {
      auto [head, args] = spine(t);
      if (head.is(TermKind::FreeVar) || head.is(TermKind::BoundVar)) return false;
      if (head.is(TermKind::Lam)) return false;
      for (const Term& a : args)
        if (!is_algebraic(a)) return false;
      return true;
    }
    default:
      return true;
  }
}

namespace {
bool miller_rec(const Term& t, int depth) {
  auto [head, args] = spine(t);
  if (head.is(TermKind::FreeVar)) {
    std::set<int> seen;
    for (const Term& a : args) {
      Term an = eta_normalize(a);
      if (!an.is(TermKind::BoundVar)) return false;
      if (an.index() >= depth) return false;
      if (!seen.insert(an.index()).second) return false;
    }
    return true;
  }
  if (head.is(TermKind::Lam)) {
    // β-normal: a λ head carries no arguments.
    return miller_rec(head.body(), depth + 1);
  }
  for (const Term& a : args)
    if (!miller_rec(a, depth)) return false;
  return true;
}
}  // namespace

bool is_miller_pattern(const Term& t) {
  if (!is_beta_normal(t)) return false;
  return miller_rec(t, 0);
}

std::string Term::show() const { return show({}); }

std::string Term::show(const std::set<std::string>& extra_avoid) const {
  if (empty()) return "<none>";
  std::set<std::string> avoid = extra_avoid;
  collect_free(*this, avoid);
  std::vector<std::string> binders;
  auto fresh_binder = [&]() {
    static const char* prefs[] = {"x", "y", "z", "w"};
    for (const char* p : prefs)
      if (!avoid.count(p)) {
        avoid.insert(p);
        return std::string(p);
      }
    for (int i = 0;; ++i) {
      std::string cand = "x" + std::to_string(i);
      if (!avoid.count(cand)) {
        avoid.insert(cand);
        return cand;
      }
    }
  };
  // ctx: 0 top, 1 function position, 2 argument position
  std::function<std::string(const Term&, int)> go = [&](const Term& t, int ctx) -> std::string {
    switch (t.kind()) {
      case TermKind::Symbol:
      case TermKind::FreeVar:
        return t.name();
      case TermKind::BoundVar: {
        int i = t.index();
        if (i < static_cast<int>(binders.size())) return binders[binders.size() - 1 - i];
        return "#" + std::to_string(i);
      }
      case TermKind::App: {
        std::string s = go(t.fun(), 1) + " " + go(t.arg(), 2);
        return ctx == 2 ? "(" + s + ")" : s;
      }
      case TermKind::Lam: {
        std::string name = fresh_binder();
        binders.push_back(name);
        std::string s = "\\" + name + ". " + go(t.body(), 0);
        binders.pop_back();
        return ctx == 0 ? s : "(" + s + ")";
      }
    }
    return "?";
  };
  return go(*this, 0);
}

}  // namespace horco
