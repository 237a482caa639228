#include "horco/parser.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "horco/error.hpp"

namespace horco {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum Kind { Ident, Colon, Arrow, Gt, Tilde, Comma, Lambda, Dot, LParen, RParen, End };
  Kind kind;
  std::string text;
  int col = 0;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool sym_char(char c) { return std::strchr("+*;=!?%&|<>/-", c) != nullptr; }

[[noreturn]] void syntax_error(int line, int col, const std::string& msg) {
  fail(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
}

std::vector<Token> lex_line(const std::string& raw, int lineno) {
  std::string line = raw;
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case '(': out.push_back({Token::LParen, "(", col}); ++i; continue;
      case ')': out.push_back({Token::RParen, ")", col}); ++i; continue;
      case ':': out.push_back({Token::Colon, ":", col}); ++i; continue;
      case ',': out.push_back({Token::Comma, ",", col}); ++i; continue;
      case '\\': out.push_back({Token::Lambda, "\\", col}); ++i; continue;
      case '.': out.push_back({Token::Dot, ".", col}); ++i; continue;
      case '~': out.push_back({Token::Tilde, "~", col}); ++i; continue;
      default: break;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Token::Ident, line.substr(i, j - i), col});
      i = j;
      continue;
    }
    if (sym_char(c)) {
      std::size_t j = i;
      while (j < line.size() && sym_char(line[j])) ++j;
      std::string run = line.substr(i, j - i);
      if (run == "->")
        out.push_back({Token::Arrow, run, col});
      else if (run == ">")
        out.push_back({Token::Gt, run, col});
      else
        out.push_back({Token::Ident, run, col});
      i = j;
      continue;
    }
    syntax_error(lineno, col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::End, "", static_cast<int>(line.size()) + 1});
  return out;
}

struct Cursor {
  const std::vector<Token>& toks;
  std::size_t pos = 0;
  int line;

  const Token& peek() const { return toks[pos]; }
  const Token& next() { return toks[pos++]; }
  bool at(Token::Kind k) const { return toks[pos].kind == k; }
  Token expect(Token::Kind k, const std::string& what) {
    if (!at(k)) syntax_error(line, peek().col, "expected " + what);
    return next();
  }
};

// ---------------------------------------------------------------------------
// Types

Type parse_type(Cursor& cur);

Type parse_type_atom(Cursor& cur) {
  if (cur.at(Token::LParen)) {
    cur.next();
    Type t = parse_type(cur);
    cur.expect(Token::RParen, "')'");
    return t;
  }
  Token id = cur.expect(Token::Ident, "a type name");
  return Type::base(id.text);
}

Type parse_type(Cursor& cur) {
  Type lhs = parse_type_atom(cur);
  if (cur.at(Token::Arrow)) {
    cur.next();
    return Type::arrow(lhs, parse_type(cur));
  }
  return lhs;
}

// ---------------------------------------------------------------------------
// Term AST

struct Ast {
  enum Kind { Id, App, Lam } kind;
  std::string name;  // Id, Lam binder
  std::vector<Ast> kids;
  int col = 0;
  int meta = -1;  // Lam binder metavariable id
};

Ast parse_term_ast(Cursor& cur);

std::optional<Ast> parse_atom(Cursor& cur) {
  if (cur.at(Token::Ident)) {
    Token id = cur.next();
    Ast a;
    a.kind = Ast::Id;
    a.name = id.text;
    a.col = id.col;
    return a;
  }
  if (cur.at(Token::LParen)) {
    cur.next();
    Ast inner = parse_term_ast(cur);
    cur.expect(Token::RParen, "')'");
    return inner;
  }
  return std::nullopt;
}

Ast parse_term_ast(Cursor& cur) {
  if (cur.at(Token::Lambda)) {
    Token lam = cur.next();
    Token binder = cur.expect(Token::Ident, "a binder name");
    cur.expect(Token::Dot, "'.'");
    Ast body = parse_term_ast(cur);
    Ast a;
    a.kind = Ast::Lam;
    a.name = binder.text;
    a.col = lam.col;
    a.kids.push_back(std::move(body));
    return a;
  }
  auto first = parse_atom(cur);
  if (!first) syntax_error(cur.line, cur.peek().col, "expected a term");
  Ast app = std::move(*first);
  for (;;) {
    if (cur.at(Token::Lambda)) {  // trailing λ argument extends to the end
      Ast arg = parse_term_ast(cur);
      Ast node;
      node.kind = Ast::App;
      node.col = app.col;
      node.kids.push_back(std::move(app));
      node.kids.push_back(std::move(arg));
      app = std::move(node);
      break;
    }
    auto atom = parse_atom(cur);
    if (!atom) break;
    Ast node;
    node.kind = Ast::App;
    node.col = app.col;
    node.kids.push_back(std::move(app));
    node.kids.push_back(std::move(*atom));
    app = std::move(node);
  }
  return app;
}

// ---------------------------------------------------------------------------
// Unification over simple types with metavariables

struct UT;
using UTRef = std::shared_ptr<UT>;

struct UT {
  int kind;  // 0 meta, 1 base, 2 arrow
  int id = -1;
  std::string base;
  UTRef a, b;
};

struct Unifier {
  std::vector<UTRef> bindings;

  UTRef meta() {
    auto t = std::make_shared<UT>();
    t->kind = 0;
    t->id = static_cast<int>(bindings.size());
    bindings.push_back(nullptr);
    return t;
  }

  static UTRef base(const std::string& name) {
    auto t = std::make_shared<UT>();
    t->kind = 1;
    t->base = name;
    return t;
  }

  static UTRef arrow(UTRef a, UTRef b) {
    auto t = std::make_shared<UT>();
    t->kind = 2;
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
  }

  static UTRef from_type(const Type& ty) {
    if (ty.is_base()) return base(ty.base_name());
    return arrow(from_type(ty.domain()), from_type(ty.codomain()));
  }

  UTRef resolve(UTRef t) {
    while (t->kind == 0 && bindings[t->id]) t = bindings[t->id];
    return t;
  }

  bool occurs(int id, const UTRef& t0) {
    UTRef t = resolve(const_cast<UTRef&>(t0));
    if (t->kind == 0) return t->id == id;
    if (t->kind == 2) return occurs(id, t->a) || occurs(id, t->b);
    return false;
  }

  bool unify(UTRef x, UTRef y) {
    x = resolve(std::move(x));
    y = resolve(std::move(y));
    if (x->kind == 0 && y->kind == 0 && x->id == y->id) return true;
    if (x->kind == 0) {
      if (occurs(x->id, y)) return false;
      bindings[x->id] = y;
      return true;
    }
    if (y->kind == 0) return unify(y, x);
    if (x->kind != y->kind) return false;
    if (x->kind == 1) return x->base == y->base;
    return unify(x->a, y->a) && unify(x->b, y->b);
  }

  std::optional<Type> to_type(UTRef t) {
    t = resolve(std::move(t));
    if (t->kind == 0) return std::nullopt;
    if (t->kind == 1) return Type::base(t->base);
    auto a = to_type(t->a);
    auto b = to_type(t->b);
    if (!a || !b) return std::nullopt;
    return Type::arrow(*a, *b);
  }
};

// ---------------------------------------------------------------------------
// Inference and term construction

struct TermBuilder {
  const Signature& sig;
  Unifier& uni;
  std::map<std::string, int>& var_metas;  // rule variables, shared per scope
  int line;

  UTRef infer(Ast& a, std::vector<std::pair<std::string, UTRef>>& binders) {
    switch (a.kind) {
      case Ast::Id: {
        for (auto it = binders.rbegin(); it != binders.rend(); ++it)
          if (it->first == a.name) return it->second;
        if (sig.declared(a.name)) return Unifier::from_type(sig.symbol_type(a.name));
        auto it = var_metas.find(a.name);
        if (it == var_metas.end()) {
          UTRef m = uni.meta();
          it = var_metas.emplace(a.name, m->id).first;
        }
        auto t = std::make_shared<UT>();
        t->kind = 0;
        t->id = it->second;
        return t;
      }
      case Ast::App: {
        UTRef tf = infer(a.kids[0], binders);
        UTRef ta = infer(a.kids[1], binders);
        UTRef r = uni.meta();
        if (!uni.unify(tf, Unifier::arrow(ta, r)))
          fail(ErrorCode::TypeError,
               "line " + std::to_string(line) + ": cannot apply at col " + std::to_string(a.col));
        return r;
      }
      case Ast::Lam: {
        UTRef m = uni.meta();
        a.meta = m->id;
        binders.emplace_back(a.name, m);
        UTRef tb = infer(a.kids[0], binders);
        binders.pop_back();
        return Unifier::arrow(m, tb);
      }
    }
    fail(ErrorCode::TypeError, "unreachable");
  }

  Term build(const Ast& a, std::vector<std::string>& binders) {
    switch (a.kind) {
      case Ast::Id: {
        for (std::size_t i = 0; i < binders.size(); ++i) {
          std::size_t idx = binders.size() - 1 - i;
          if (binders[idx] == a.name) return Term::bound_var(static_cast<int>(i));
        }
        if (sig.declared(a.name)) return Term::symbol(a.name);
        return Term::free_var(a.name);
      }
      case Ast::App: {
        Term f = build(a.kids[0], binders);
        Term x = build(a.kids[1], binders);
        return Term::app(f, x);
      }
      case Ast::Lam: {
        auto mt = std::make_shared<UT>();
        mt->kind = 0;
        mt->id = a.meta;
        auto ty = uni.to_type(mt);
        if (!ty)
          fail(ErrorCode::TypeInferenceAmbiguous,
               "binder " + a.name + " on line " + std::to_string(line));
        binders.push_back(a.name);
        Term body = build(a.kids[0], binders);
        binders.pop_back();
        return Term::lam(*ty, body);
      }
    }
    fail(ErrorCode::TypeError, "unreachable");
  }
};

struct ScopeInference {
  const Signature& sig;
  Unifier uni;
  std::map<std::string, int> var_metas;

  explicit ScopeInference(const Signature& s, const TypingEnv& seed) : sig(s) {
    for (const auto& [name, ty] : seed) {
      UTRef m = uni.meta();
      var_metas.emplace(name, m->id);
      uni.bindings[m->id] = Unifier::from_type(ty);
    }
  }

  UTRef infer(Ast& a, int line) {
    TermBuilder tb{sig, uni, var_metas, line};
    std::vector<std::pair<std::string, UTRef>> binders;
    return tb.infer(a, binders);
  }

  Term build(const Ast& a, int line) {
    TermBuilder tb{sig, uni, var_metas, line};
    std::vector<std::string> binders;
    return tb.build(a, binders);
  }

  TypingEnv resolve_env(int line) {
    TypingEnv env;
    for (const auto& [name, id] : var_metas) {
      auto mt = std::make_shared<UT>();
      mt->kind = 0;
      mt->id = id;
      auto ty = uni.to_type(mt);
      if (!ty)
        fail(ErrorCode::TypeInferenceAmbiguous, "variable " + name + " on line " + std::to_string(line));
      env[name] = *ty;
    }
    return env;
  }
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

// ---------------------------------------------------------------------------

RewriteSystem parse_system(const std::string& text) {
  RewriteSystem sys;
  enum class Section { None, Sig, Prec, Status, Rules, Theory } section = Section::None;

  std::vector<std::pair<int, std::string>> pending_rules, pending_theory;
  std::vector<std::string> lines;
  {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
  }

  std::optional<Signature> sig;  // compiled lazily before the first rule line

  for (int ln = 1; ln <= static_cast<int>(lines.size()); ++ln) {
    auto toks = lex_line(lines[ln - 1], ln);
    if (toks.size() == 1) continue;  // blank or comment
    Cursor cur{toks, 0, ln};

    if (toks.size() == 2 && toks[0].kind == Token::Ident) {
      const std::string& word = toks[0].text;
      if (word == "sig") { section = Section::Sig; continue; }
      if (word == "prec") { section = Section::Prec; continue; }
      if (word == "status") { section = Section::Status; continue; }
      if (word == "rules") { section = Section::Rules; continue; }
      if (word == "theory") { section = Section::Theory; continue; }
    }

    switch (section) {
      case Section::None:
        syntax_error(ln, toks[0].col, "expected a section header (sig, prec, status, rules, theory)");
      case Section::Sig: {
        Token name = cur.expect(Token::Ident, "a symbol name");
        cur.expect(Token::Colon, "':'");
        Type ty = parse_type(cur);
        cur.expect(Token::End, "end of line");
        for (const auto& [existing, t] : sys.sig.symbols) {
          (void)t;
          if (existing == name.text) fail(ErrorCode::DuplicateSymbol, name.text);
        }
        sys.sig.declare(name.text, ty);
        break;
      }
      case Section::Prec: {
        Token f = cur.expect(Token::Ident, "a symbol name");
        if (cur.at(Token::Tilde)) {
          cur.next();
          Token g = cur.expect(Token::Ident, "a symbol name");
          cur.expect(Token::End, "end of line");
          sys.sig.prec_equiv(f.text, g.text);
        } else {
          cur.expect(Token::Gt, "'>' or '~'");
          for (;;) {
            Token g = cur.expect(Token::Ident, "a symbol name");
            sys.sig.prec_greater(f.text, g.text);
            if (cur.at(Token::Comma)) {
              cur.next();
              continue;
            }
            break;
          }
          cur.expect(Token::End, "end of line");
        }
        break;
      }
      case Section::Status: {
        Token f = cur.expect(Token::Ident, "a symbol name");
        Token st = cur.expect(Token::Ident, "a status (lex, lexrl, mul)");
        cur.expect(Token::End, "end of line");
        StatusKind kind;
        if (st.text == "lex")
          kind = StatusKind::LexLR;
        else if (st.text == "lexrl")
          kind = StatusKind::LexRL;
        else if (st.text == "mul")
          kind = StatusKind::Mul;
        else
          syntax_error(ln, st.col, "unknown status '" + st.text + "'");
        sys.sig.status[f.text] = kind;
        break;
      }
      case Section::Rules:
        pending_rules.emplace_back(ln, lines[ln - 1]);
        break;
      case Section::Theory:
        pending_theory.emplace_back(ln, lines[ln - 1]);
        break;
    }
  }

  Signature compiled(sys.sig);
  auto parse_rule_line = [&](int ln, const std::string& raw) -> RewriteRule {
    auto toks = lex_line(raw, ln);
    Cursor cur{toks, 0, ln};
    Ast lhs_ast = parse_term_ast(cur);
    cur.expect(Token::Arrow, "'->'");
    Ast rhs_ast = parse_term_ast(cur);
    cur.expect(Token::End, "end of line");

    ScopeInference inf(compiled, {});
    UTRef tl = inf.infer(lhs_ast, ln);
    UTRef tr = inf.infer(rhs_ast, ln);
    if (!inf.uni.unify(tl, tr))
      fail(ErrorCode::TypeError, "line " + std::to_string(ln) + ": rule sides have different types");
    RewriteRule rule;
    rule.lhs = inf.build(lhs_ast, ln);
    rule.rhs = inf.build(rhs_ast, ln);
    rule.env = inf.resolve_env(ln);
    rule.text = trim(raw.substr(0, raw.find('#')));
    return rule;
  };

  for (const auto& [ln, raw] : pending_rules) sys.rules.push_back(parse_rule_line(ln, raw));
  for (const auto& [ln, raw] : pending_theory) sys.theory.push_back(parse_rule_line(ln, raw));
  return sys;
}

Term parse_term(const std::string& text, const Signature& sig, TypingEnv& env) {
  auto toks = lex_line(text, 1);
  Cursor cur{toks, 0, 1};
  Ast ast = parse_term_ast(cur);
  cur.expect(Token::End, "end of input");
  ScopeInference inf(sig, env);
  inf.infer(ast, 1);
  Term t = inf.build(ast, 1);
  env = inf.resolve_env(1);
  return t;
}

std::pair<Term, Term> parse_term_pair(const std::string& lhs, const std::string& rhs,
                                      const Signature& sig, TypingEnv& env) {
  auto ltoks = lex_line(lhs, 1);
  Cursor lcur{ltoks, 0, 1};
  Ast last = parse_term_ast(lcur);
  lcur.expect(Token::End, "end of input");
  auto rtoks = lex_line(rhs, 1);
  Cursor rcur{rtoks, 0, 1};
  Ast rast = parse_term_ast(rcur);
  rcur.expect(Token::End, "end of input");
  ScopeInference inf(sig, env);
  inf.infer(last, 1);
  inf.infer(rast, 1);
  Term l = inf.build(last, 1);
  Term r = inf.build(rast, 1);
  env = inf.resolve_env(1);
  return {l, r};
}

std::string print_system(const RewriteSystem& sys) {
  std::ostringstream out;
  std::set<std::string> symbol_names;
  for (const auto& [name, ty] : sys.sig.symbols) {
    (void)ty;
    symbol_names.insert(name);
  }
  if (!sys.sig.symbols.empty()) {
    out << "sig\n";
    for (const auto& [name, ty] : sys.sig.symbols) out << "  " << name << " : " << ty.show() << "\n";
  }
  if (!sys.sig.prec_decls.empty()) {
    out << "prec\n";
    for (const auto& d : sys.sig.prec_decls)
      out << "  " << d.f << (d.equiv ? " ~ " : " > ") << d.g << "\n";
  }
  if (!sys.sig.status.empty()) {
    out << "status\n";
    for (const auto& [name, st] : sys.sig.status) out << "  " << name << " " << status_name(st) << "\n";
  }
  auto emit_rules = [&](const char* header, const std::vector<RewriteRule>& rules) {
    if (rules.empty()) return;
    out << header << "\n";
    for (const auto& r : rules)
      out << "  " << r.lhs.show(symbol_names) << " -> " << r.rhs.show(symbol_names) << "\n";
  };
  emit_rules("rules", sys.rules);
  emit_rules("theory", sys.theory);
  return out.str();
}

}  // namespace horco
