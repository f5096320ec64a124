#include "heightlab/bound_expr.hpp"

#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "heightlab/errors.hpp"

namespace heightlab {

struct BoundExpr::Node {
  Kind kind = Kind::Constant;
  std::string name;
  std::optional<mpq_class> value;    // exact constants
  std::optional<LogInterval> bound;  // enclosure-only constants
  std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using NodePtr = std::shared_ptr<const BoundExpr::Node>;

// Largest exact power result, in bits, before the exact path gives up.
constexpr double kExactBitCap = 1 << 20;
constexpr long kFactorialCap = 100000;

NodePtr make_node(BoundExpr::Kind kind, std::vector<NodePtr> children) {
  auto n = std::make_shared<BoundExpr::Node>();
  n->kind = kind;
  n->children = std::move(children);
  return n;
}

}  // namespace

std::string to_string(BoundExpr::Kind kind) {
  switch (kind) {
    case BoundExpr::Kind::Constant: return "constant";
    case BoundExpr::Kind::Variable: return "variable";
    case BoundExpr::Kind::Sum: return "sum";
    case BoundExpr::Kind::Product: return "product";
    case BoundExpr::Kind::Quotient: return "quotient";
    case BoundExpr::Kind::Power: return "power";
    case BoundExpr::Kind::Exponential: return "exponential";
    case BoundExpr::Kind::Logarithm: return "logarithm";
    case BoundExpr::Kind::Factorial: return "factorial";
    case BoundExpr::Kind::Max: return "max";
  }
  return "?";
}

BoundExpr::BoundExpr() : BoundExpr(mpq_class(0)) {}
BoundExpr::BoundExpr(long value) : BoundExpr(mpq_class(value)) {}
BoundExpr::BoundExpr(const mpz_class& value) : BoundExpr(mpq_class(value)) {}

BoundExpr::BoundExpr(const mpq_class& value) {
  if (value < 0) throw DomainError("bound expression constants must be non-negative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  node_ = n;
}

BoundExpr BoundExpr::constant(const LogInterval& value, std::string label) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->bound = value;
  n->name = std::move(label);
  return BoundExpr(NodePtr(n));
}

BoundExpr BoundExpr::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  return BoundExpr(NodePtr(n));
}

namespace {
std::vector<NodePtr> nodes_of(const std::vector<BoundExpr>& v, std::function<NodePtr(const BoundExpr&)> get) {
  std::vector<NodePtr> out;
  for (const auto& e : v) out.push_back(get(e));
  return out;
}
}  // namespace

#define HL_NODES(v) nodes_of(v, [](const BoundExpr& e) { return e.node_; })

BoundExpr BoundExpr::sum(std::vector<BoundExpr> terms) {
  if (terms.empty()) throw DomainError("empty sum");
  return BoundExpr(make_node(Kind::Sum, HL_NODES(terms)));
}
BoundExpr BoundExpr::product(std::vector<BoundExpr> factors) {
  if (factors.empty()) throw DomainError("empty product");
  return BoundExpr(make_node(Kind::Product, HL_NODES(factors)));
}
BoundExpr BoundExpr::quotient(BoundExpr num, BoundExpr den) {
  return BoundExpr(make_node(Kind::Quotient, {num.node_, den.node_}));
}
BoundExpr BoundExpr::power(BoundExpr base, BoundExpr exponent) {
  return BoundExpr(make_node(Kind::Power, {base.node_, exponent.node_}));
}
BoundExpr BoundExpr::exponential(BoundExpr x) { return BoundExpr(make_node(Kind::Exponential, {x.node_})); }
BoundExpr BoundExpr::logarithm(BoundExpr x) { return BoundExpr(make_node(Kind::Logarithm, {x.node_})); }
BoundExpr BoundExpr::factorial(BoundExpr n) { return BoundExpr(make_node(Kind::Factorial, {n.node_})); }
BoundExpr BoundExpr::maximum(std::vector<BoundExpr> args) {
  if (args.empty()) throw DomainError("empty max");
  return BoundExpr(make_node(Kind::Max, HL_NODES(args)));
}

#undef HL_NODES

BoundExpr BoundExpr::named(std::string name) const {
  auto n = std::make_shared<Node>(*node_);
  n->name = std::move(name);
  return BoundExpr(NodePtr(n));
}

BoundExpr::Kind BoundExpr::kind() const { return node_->kind; }
const std::string& BoundExpr::name() const { return node_->name; }

std::vector<BoundExpr> BoundExpr::children() const {
  std::vector<BoundExpr> out;
  for (const auto& c : node_->children) out.push_back(BoundExpr(c));
  return out;
}

namespace {

std::optional<long> small_integer(const mpq_class& q, long cap) {
  if (q.get_den() != 1 || q < 0 || q > cap) return std::nullopt;
  return q.get_num().get_si();
}

struct Evaluator {
  const BoundExpr::Env& env;
  Precision prec;
  std::function<std::optional<mpq_class>(const NodePtr&)> exact_of;
  std::unordered_map<const BoundExpr::Node*, LogInterval> memo;

  LogInterval eval(const NodePtr& n) {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    LogInterval r = compute(*n);
    memo.emplace(n.get(), r);
    return r;
  }

  LogInterval compute(const BoundExpr::Node& n) {
    using K = BoundExpr::Kind;
    switch (n.kind) {
      case K::Constant:
        return n.value ? LogInterval::from_rational(*n.value, prec) : *n.bound;
      case K::Variable: {
        auto it = env.find(n.name);
        if (it == env.end()) throw UnknownVariable("unbound variable '" + n.name + "'");
        return it->second;
      }
      case K::Sum: {
        LogInterval acc = eval(n.children[0]);
        for (std::size_t i = 1; i < n.children.size(); ++i) acc = acc + eval(n.children[i]);
        return acc;
      }
      case K::Product: {
        LogInterval acc = eval(n.children[0]);
        for (std::size_t i = 1; i < n.children.size(); ++i) acc = acc * eval(n.children[i]);
        return acc;
      }
      case K::Quotient: return eval(n.children[0]) / eval(n.children[1]);
      case K::Power: return pow(eval(n.children[0]), eval(n.children[1]));
      case K::Exponential: return exp(eval(n.children[0]));
      case K::Logarithm: return log(eval(n.children[0]));
      case K::Factorial: {
        auto v = exact_of(n.children[0]);
        std::optional<long> k = v ? small_integer(*v, kFactorialCap) : std::nullopt;
        if (!k) throw DomainError("factorial needs a small exact non-negative integer");
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(*k));
        return LogInterval::from_integer(f, prec);
      }
      case K::Max: {
        LogInterval acc = eval(n.children[0]);
        for (std::size_t i = 1; i < n.children.size(); ++i) acc = max(acc, eval(n.children[i]));
        return acc;
      }
    }
    throw DomainError("bad node");
  }
};

}  // namespace

LogInterval BoundExpr::evaluate(const Env& env, Precision prec) const {
  Evaluator ev{env, prec, [](const NodePtr& p) { return BoundExpr(p).exact(); }, {}};
  return ev.eval(node_);
}

std::optional<mpq_class> BoundExpr::exact(const ExactEnv& env) const {
  std::unordered_map<const Node*, std::optional<mpq_class>> memo;
  std::function<std::optional<mpq_class>(const NodePtr&)> go = [&](const NodePtr& p) -> std::optional<mpq_class> {
    if (auto it = memo.find(p.get()); it != memo.end()) return it->second;
    const Node& n = *p;
    std::optional<mpq_class> r;
    switch (n.kind) {
      case Kind::Constant: r = n.value; break;
      case Kind::Variable: {
        auto it = env.find(n.name);
        if (it != env.end()) r = it->second;
        break;
      }
      case Kind::Sum:
      case Kind::Product: {
        mpq_class acc = n.kind == Kind::Sum ? 0 : 1;
        bool ok = true;
        for (const auto& c : n.children) {
          auto v = go(c);
          if (!v) {
            ok = false;
            break;
          }
          acc = n.kind == Kind::Sum ? mpq_class(acc + *v) : mpq_class(acc * *v);
        }
        if (ok) r = acc;
        break;
      }
      case Kind::Quotient: {
        auto a = go(n.children[0]), b = go(n.children[1]);
        if (a && b && *b != 0) r = mpq_class(*a / *b);
        break;
      }
      case Kind::Power: {
        auto a = go(n.children[0]), b = go(n.children[1]);
        if (!a || !b || b->get_den() != 1) break;
        const double bits = static_cast<double>(mpz_sizeinbase(a->get_num().get_mpz_t(), 2) +
                                                mpz_sizeinbase(a->get_den().get_mpz_t(), 2));
        if (!b->get_num().fits_slong_p() || bits * b->get_d() > kExactBitCap) break;
        const unsigned long e = b->get_num().get_ui();
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), a->get_num().get_mpz_t(), e);
        mpz_pow_ui(den.get_mpz_t(), a->get_den().get_mpz_t(), e);
        r = mpq_class(num, den);
        r->canonicalize();
        break;
      }
      case Kind::Factorial: {
        auto a = go(n.children[0]);
        auto k = a ? small_integer(*a, kFactorialCap) : std::nullopt;
        if (!k) break;
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(*k));
        r = mpq_class(f);
        break;
      }
      case Kind::Max: {
        bool ok = true;
        mpq_class best = 0;
        for (const auto& c : n.children) {
          auto v = go(c);
          if (!v) {
            ok = false;
            break;
          }
          if (*v > best) best = *v;
        }
        if (ok) r = best;
        break;
      }
      case Kind::Exponential:
      case Kind::Logarithm: {
        auto a = go(n.children[0]);
        if (a && n.kind == Kind::Exponential && *a == 0) r = mpq_class(1);
        if (a && n.kind == Kind::Logarithm && *a == 1) r = mpq_class(0);
        break;
      }
    }
    memo.emplace(p.get(), r);
    return r;
  };
  return go(node_);
}

namespace {

std::string render(const NodePtr& p, bool root) {
  const auto& n = *p;
  using K = BoundExpr::Kind;
  if (!root && !n.name.empty()) return n.name;
  auto wrap = [](const NodePtr& c) {
    std::string s = render(c, false);
    bool atomic = !c->name.empty() || c->kind == K::Constant || c->kind == K::Variable ||
                  c->kind == K::Factorial || c->kind == K::Max || c->kind == K::Logarithm ||
                  c->kind == K::Exponential;
    return atomic ? s : "(" + s + ")";
  };
  switch (n.kind) {
    case K::Constant:
      if (n.value) return n.value->get_str();
      return n.name.empty() ? n.bound->to_string() : n.name;
    case K::Variable: return n.name;
    case K::Sum:
    case K::Product: {
      std::string out;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += n.kind == K::Sum ? " + " : "*";
        out += n.kind == K::Sum ? render(n.children[i], false) : wrap(n.children[i]);
      }
      return out;
    }
    case K::Quotient: return wrap(n.children[0]) + "/" + wrap(n.children[1]);
    case K::Power: return wrap(n.children[0]) + "^" + wrap(n.children[1]);
    case K::Exponential: return "exp(" + render(n.children[0], false) + ")";
    case K::Logarithm: return "log(" + render(n.children[0], false) + ")";
    case K::Factorial: return wrap(n.children[0]) + "!";
    case K::Max: {
      std::string out = "max(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ", ";
        out += render(n.children[i], false);
      }
      return out + ")";
    }
  }
  return "?";
}

void topo(const NodePtr& p, std::set<const BoundExpr::Node*>& seen, std::vector<NodePtr>& order) {
  if (!seen.insert(p.get()).second) return;
  for (const auto& c : p->children) topo(c, seen, order);
  order.push_back(p);
}

}  // namespace

std::string BoundExpr::trace() const { return render(node_, true); }

std::vector<std::string> BoundExpr::definitions() const {
  std::set<const Node*> seen;
  std::vector<NodePtr> order;
  topo(node_, seen, order);
  std::vector<std::string> out;
  for (const auto& p : order) {
    if (p->name.empty() || p->kind == Kind::Variable) continue;
    if (p->kind == Kind::Constant && !p->value) {
      out.push_back(p->name + " = " + p->bound->to_string());
      continue;
    }
    out.push_back(p->name + " = " + render(p, true));
  }
  return out;
}

std::string BoundExpr::to_json() const {
  std::set<const Node*> seen;
  std::vector<NodePtr> order;
  topo(node_, seen, order);
  std::unordered_map<const Node*, std::size_t> ids;
  for (std::size_t i = 0; i < order.size(); ++i) ids[order[i].get()] = i;
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& p : order) {
    nlohmann::json j;
    j["id"] = ids[p.get()];
    j["kind"] = to_string(p->kind);
    if (!p->name.empty()) j["name"] = p->name;
    if (p->value) j["value"] = p->value->get_str();
    if (p->bound) j["value"] = p->bound->to_string(12);
    if (!p->children.empty()) {
      nlohmann::json ch = nlohmann::json::array();
      for (const auto& c : p->children) ch.push_back(ids[c.get()]);
      j["children"] = ch;
    }
    nodes.push_back(j);
  }
  nlohmann::json out;
  out["root"] = ids[node_.get()];
  out["nodes"] = nodes;
  return out.dump();
}

}  // namespace heightlab
