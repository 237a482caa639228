#include "horco/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "horco/error.hpp"

namespace horco {

namespace {

// Subtype closure of the signature, environment and target, deterministic
// order.
std::vector<Type> type_universe(const Signature& sig, const TypingEnv& env, const Type& target) {
  std::vector<Type> todo{target};
  for (const auto& name : sig.symbol_names()) todo.push_back(sig.symbol_type(name));
  for (const auto& [name, ty] : env) {
    (void)name;
    todo.push_back(ty);
  }
  std::vector<Type> out;
  auto seen = [&](const Type& t) {
    return std::any_of(out.begin(), out.end(), [&](const Type& u) { return u == t; });
  };
  while (!todo.empty()) {
    Type t = todo.back();
    todo.pop_back();
    if (seen(t)) continue;
    out.push_back(t);
    if (t.is_arrow()) {
      todo.push_back(t.domain());
      todo.push_back(t.codomain());
    }
  }
  std::sort(out.begin(), out.end(), [](const Type& a, const Type& b) { return a.show() < b.show(); });
  return out;
}

struct Enumerator {
  const Signature& sig;
  const TypingEnv& env;
  std::vector<Type> universe;

  struct Key {
    Type type;
    int size;
    std::vector<Type> stack;
    bool operator<(const Key& o) const {
      if (size != o.size) return size < o.size;
      auto a = type.show(), b = o.type.show();
      if (a != b) return a < b;
      if (stack.size() != o.stack.size()) return stack.size() < o.stack.size();
      for (std::size_t i = 0; i < stack.size(); ++i) {
        auto x = stack[i].show(), y = o.stack[i].show();
        if (x != y) return x < y;
      }
      return false;
    }
  };
  std::map<Key, std::vector<Term>> memo;

  // Terms of exactly `size` nodes and the given type under the binder stack
  // (innermost last).
  const std::vector<Term>& exact(const Type& type, int size, const std::vector<Type>& stack) {
    Key key{type, size, stack};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Term> out;
    if (size >= 1) {
      if (size == 1) {
        for (const auto& name : sig.symbol_names())
          if (sig.symbol_type(name) == type) out.push_back(Term::symbol(name));
        for (const auto& [name, ty] : env)
          if (ty == type) out.push_back(Term::free_var(name));
        for (std::size_t i = 0; i < stack.size(); ++i)
          if (stack[stack.size() - 1 - i] == type) out.push_back(Term::bound_var(static_cast<int>(i)));
      }
      // λ weighs 2 + body
      if (type.is_arrow() && size >= 3) {
        auto next = stack;
        next.push_back(type.domain());
        for (const Term& body : exact(type.codomain(), size - 2, next))
          out.push_back(Term::lam(type.domain(), body));
      }
      // applications: argument type from the universe
      if (size >= 2) {
        for (const Type& u : universe) {
          Type fun_type = Type::arrow(u, type);
          for (int k = 1; k < size; ++k) {
            const auto& funs = exact(fun_type, k, stack);
            if (funs.empty()) continue;
            const auto& args = exact(u, size - k, stack);
            for (const Term& f : funs)
              for (const Term& a : args) out.push_back(Term::app(f, a));
          }
        }
      }
    }
    return memo.emplace(std::move(key), std::move(out)).first->second;
  }
};

}  // namespace

std::vector<Term> enumerate_terms(const Signature& sig, const TypingEnv& env, const Type& target,
                                  int max_size, int cap) {
  if (max_size > cap)
    fail(ErrorCode::CapExceeded, "max_size " + std::to_string(max_size) + " exceeds cap " + std::to_string(cap));
  Enumerator e{sig, env, type_universe(sig, env, target)};
  std::vector<Term> out;
  std::vector<Type> stack;
  for (int n = 1; n <= max_size; ++n) {
    const auto& layer = e.exact(target, n, stack);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

namespace {
struct Counter {
  const Signature& sig;
  const TypingEnv& env;
  std::vector<Type> universe;
  std::map<Enumerator::Key, std::int64_t> memo;

  std::int64_t exact(const Type& type, int size, const std::vector<Type>& stack) {
    if (size < 1) return 0;
    Enumerator::Key key{type, size, stack};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::int64_t n = 0;
    if (size == 1) {
      for (const auto& name : sig.symbol_names())
        if (sig.symbol_type(name) == type) ++n;
      for (const auto& [name, ty] : env) {
        (void)name;
        if (ty == type) ++n;
      }
      for (const Type& b : stack)
        if (b == type) ++n;
    }
    if (type.is_arrow() && size >= 3) {
      auto next = stack;
      next.push_back(type.domain());
      n += exact(type.codomain(), size - 2, next);
    }
    if (size >= 2) {
      for (const Type& u : universe) {
        Type fun_type = Type::arrow(u, type);
        for (int k = 1; k < size; ++k) n += exact(fun_type, k, stack) * exact(u, size - k, stack);
      }
    }
    memo.emplace(std::move(key), n);
    return n;
  }
};
}  // namespace

std::int64_t count_terms(const Signature& sig, const TypingEnv& env, const Type& target,
                         int max_size) {
  Counter c{sig, env, type_universe(sig, env, target)};
  std::int64_t total = 0;
  std::vector<Type> stack;
  for (int n = 1; n <= max_size; ++n) total += c.exact(target, n, stack);
  return total;
}

}  // namespace horco
