#include "horco/typing.hpp"

#include <vector>

#include "horco/error.hpp"

namespace horco {

namespace {
Type type_rec(const Term& t, const TypingEnv& env, const Signature& sig, std::vector<Type>& binders) {
  switch (t.kind()) {
    case TermKind::Symbol:
      return sig.symbol_type(t.name());
    case TermKind::FreeVar: {
      auto it = env.find(t.name());
      if (it == env.end()) fail(ErrorCode::UnboundVariable, t.name());
      return it->second;
    }
    case TermKind::BoundVar: {
      int i = t.index();
      if (i >= static_cast<int>(binders.size()))
        fail(ErrorCode::IllTyped, "dangling bound variable in " + t.show());
      return binders[binders.size() - 1 - i];
    }
    case TermKind::App: {
      Type tf = type_rec(t.fun(), env, sig, binders);
      Type ta = type_rec(t.arg(), env, sig, binders);
      if (!tf.is_arrow())
        fail(ErrorCode::NonArrowApplied, t.fun().show() + " : " + tf.show() + " applied to " + t.arg().show());
      if (tf.domain() != ta)
        fail(ErrorCode::ApplicationTypeMismatch,
             t.fun().show() + " expects " + tf.domain().show() + ", got " + t.arg().show() + " : " + ta.show());
      return tf.codomain();
    }
    case TermKind::Lam: {
      binders.push_back(t.annot());
      Type tb = type_rec(t.body(), env, sig, binders);
      binders.pop_back();
      return Type::arrow(t.annot(), tb);
    }
  }
  fail(ErrorCode::IllTyped, "empty term");
}
}  // namespace

Type type_of(const Term& t, const TypingEnv& env, const Signature& sig) {
  std::vector<Type> binders;
  return type_rec(t, env, sig, binders);
}

Term substitute_checked(const Term& t, const std::string& name, const Term& u, const TypingEnv& env,
                        const Signature& sig) {
  auto it = env.find(name);
  if (it == env.end()) fail(ErrorCode::UnboundVariable, name);
  Type tu = type_of(u, env, sig);
  if (tu != it->second)
    fail(ErrorCode::TypeMismatch, name + " : " + it->second.show() + " substituted by term of type " + tu.show());
  return substitute(t, name, u);
}

bool is_first_order(const Term& t, const TypingEnv& env, const Signature& sig) {
  switch (t.kind()) {
    case TermKind::Lam:
    case TermKind::BoundVar:
      return false;
    case TermKind::FreeVar: {
      auto it = env.find(t.name());
      return it != env.end() && it->second.is_base();
    }
    case TermKind::Symbol:
      return sig.declared(t.name()) && sig.symbol_type(t.name()).is_base();
    case TermKind::App: {
      auto [head, args] = spine(t);
      if (!head.is(TermKind::Symbol) || !sig.declared(head.name())) return false;
      const Type& th = sig.symbol_type(head.name());
      if (th.arity() != static_cast<int>(args.size())) return false;
      for (const Term& a : args)
        if (!is_first_order(a, env, sig)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace horco
