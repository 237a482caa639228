#include "horco/type.hpp"

#include "horco/error.hpp"

namespace horco {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::ApplicationTypeMismatch: return "ApplicationTypeMismatch";
    case ErrorCode::NonArrowApplied: return "NonArrowApplied";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::InvalidPosition: return "InvalidPosition";
    case ErrorCode::InternalLimit: return "InternalLimit";
    case ErrorCode::NotFirstOrder: return "NotFirstOrder";
    case ErrorCode::IllTyped: return "IllTyped";
    case ErrorCode::MalformedRule: return "MalformedRule";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::TypeInferenceAmbiguous: return "TypeInferenceAmbiguous";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Usage: return "Usage";
  }
  return "Error";
}

std::string show_position(const Position& p) {
  if (p.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

struct Type::Node {
  bool arrow = false;
  std::string name;  // base
  Type dom, cod;     // arrow
  std::size_t hash = 0;
};

Type Type::base(std::string name) {
  auto n = std::make_shared<Node>();
  n->arrow = false;
  n->name = std::move(name);
  n->hash = std::hash<std::string>{}(n->name) * 3 + 1;
  return Type(std::move(n));
}

Type Type::arrow(Type domain, Type codomain) {
  auto n = std::make_shared<Node>();
  n->arrow = true;
  n->dom = std::move(domain);
  n->cod = std::move(codomain);
  n->hash = n->dom.hash() * 1000003u + n->cod.hash() * 31u + 2;
  return Type(std::move(n));
}

Type Type::arrow(const std::vector<Type>& domains, Type result) {
  Type t = std::move(result);
  for (auto it = domains.rbegin(); it != domains.rend(); ++it) t = arrow(*it, t);
  return t;
}

bool Type::is_base() const { return node_ && !node_->arrow; }
bool Type::is_arrow() const { return node_ && node_->arrow; }

const std::string& Type::base_name() const { return node_->name; }
const Type& Type::domain() const { return node_->dom; }
const Type& Type::codomain() const { return node_->cod; }

std::vector<Type> Type::domains() const {
  std::vector<Type> out;
  const Type* t = this;
  while (t->is_arrow()) {
    out.push_back(t->domain());
    t = &t->codomain();
  }
  return out;
}

const Type& Type::result() const {
  const Type* t = this;
  while (t->is_arrow()) t = &t->codomain();
  return *t;
}

int Type::arity() const {
  int n = 0;
  const Type* t = this;
  while (t->is_arrow()) {
    ++n;
    t = &t->codomain();
  }
  return n;
}

std::size_t Type::hash() const { return node_ ? node_->hash : 0; }

bool Type::operator==(const Type& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->hash != other.node_->hash) return false;
  if (node_->arrow != other.node_->arrow) return false;
  if (!node_->arrow) return node_->name == other.node_->name;
  return node_->dom == other.node_->dom && node_->cod == other.node_->cod;
}

std::string Type::show() const {
  if (empty()) return "<none>";
  if (is_base()) return base_name();
  std::string lhs = domain().is_arrow() ? "(" + domain().show() + ")" : domain().show();
  return lhs + " -> " + codomain().show();
}

std::vector<Position> Type::positions() const {
  std::vector<Position> out;
  Position cur;
  auto walk = [&](auto&& self, const Type& t) -> void {
    out.push_back(cur);
    if (t.is_arrow()) {
      cur.push_back(1);
      self(self, t.domain());
      cur.back() = 2;
      self(self, t.codomain());
      cur.pop_back();
    }
  };
  walk(walk, *this);
  return out;
}

const Type& Type::subtype_at(const Position& p) const {
  const Type* t = this;
  for (int step : p) {
    if (!t->is_arrow()) fail(ErrorCode::InvalidPosition, "position " + show_position(p) + " not in type " + show());
    t = step == 1 ? &t->domain() : &t->codomain();
  }
  return *t;
}

}  // namespace horco
