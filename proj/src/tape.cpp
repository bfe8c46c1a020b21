#include "apnn/tape.hpp"

#include <cmath>
#include <string>

#include "apnn/error.hpp"

namespace apnn::ad {

const char* to_string(OpKind kind) {
  switch (kind) {
    case OpKind::leaf: return "leaf";
    case OpKind::constant: return "constant";
    case OpKind::add: return "add";
    case OpKind::sub: return "sub";
    case OpKind::mul: return "mul";
    case OpKind::div: return "div";
    case OpKind::neg: return "neg";
    case OpKind::sin: return "sin";
    case OpKind::cos: return "cos";
    case OpKind::tanh: return "tanh";
    case OpKind::exp: return "exp";
    case OpKind::power: return "power";
  }
  return "unknown";
}

Var Tape::push(const TapeNode& n) {
  nodes_.push_back(n);
  return Var(this, static_cast<std::int32_t>(nodes_.size() - 1));
}

void Tape::check_owned(Var v) const {
  if (v.tape_ != this || v.index_ < 0 || static_cast<std::size_t>(v.index_) >= nodes_.size()) {
    throw MisuseError("variable does not belong to this tape");
  }
}

Var Tape::leaf(double value) {
  TapeNode n;
  n.kind = OpKind::leaf;
  n.value = value;
  return push(n);
}

Var Tape::constant(double value) {
  TapeNode n;
  n.kind = OpKind::constant;
  n.value = value;
  return push(n);
}

Var Tape::unary(OpKind kind, Var a, double exponent) {
  check_owned(a);
  const double x = node(a.index_).value;
  TapeNode n;
  n.kind = kind;
  n.lhs = a.index_;
  switch (kind) {
    case OpKind::neg:
      n.value = -x;
      n.d_lhs = -1.0;
      break;
    case OpKind::sin:
      n.value = std::sin(x);
      n.d_lhs = std::cos(x);
      break;
    case OpKind::cos:
      n.value = std::cos(x);
      n.d_lhs = -std::sin(x);
      break;
    case OpKind::tanh:
      n.value = std::tanh(x);
      n.d_lhs = 1.0 - n.value * n.value;
      break;
    case OpKind::exp:
      n.value = std::exp(x);
      n.d_lhs = n.value;
      break;
    case OpKind::power:
      n.value = std::pow(x, exponent);
      n.d_lhs = exponent * std::pow(x, exponent - 1.0);
      n.exponent = exponent;
      break;
    default:
      throw ConfigError(std::string("not a unary primitive: ") + to_string(kind));
  }
  return push(n);
}

Var Tape::binary(OpKind kind, Var a, Var b) {
  check_owned(a);
  check_owned(b);
  const double x = node(a.index_).value;
  const double y = node(b.index_).value;
  TapeNode n;
  n.kind = kind;
  n.lhs = a.index_;
  n.rhs = b.index_;
  switch (kind) {
    case OpKind::add:
      n.value = x + y;
      n.d_lhs = 1.0;
      n.d_rhs = 1.0;
      break;
    case OpKind::sub:
      n.value = x - y;
      n.d_lhs = 1.0;
      n.d_rhs = -1.0;
      break;
    case OpKind::mul:
      n.value = x * y;
      n.d_lhs = y;
      n.d_rhs = x;
      break;
    case OpKind::div:
      n.value = x / y;
      n.d_lhs = 1.0 / y;
      n.d_rhs = -n.value / y;
      break;
    default:
      throw ConfigError(std::string("not a binary primitive: ") + to_string(kind));
  }
  return push(n);
}

void Tape::backward(Var output, std::vector<double>& adjoints) const {
  check_owned(output);
  adjoints.assign(nodes_.size(), 0.0);
  adjoints[static_cast<std::size_t>(output.index_)] = 1.0;
  for (std::int32_t i = output.index_; i >= 0; --i) {
    const TapeNode& n = nodes_[static_cast<std::size_t>(i)];
    const double g = adjoints[static_cast<std::size_t>(i)];
    if (g == 0.0) continue;
    if (n.lhs >= i || n.rhs >= i) {
      throw InternalError("tape cycle at node " + std::to_string(i));
    }
    if (n.lhs >= 0) adjoints[static_cast<std::size_t>(n.lhs)] += g * n.d_lhs;
    if (n.rhs >= 0) adjoints[static_cast<std::size_t>(n.rhs)] += g * n.d_rhs;
  }
}

std::vector<double> Tape::reverse_gradient(Var output, std::span<const Var> leaves) const {
  for (const Var& l : leaves) {
    check_owned(l);
    if (node(l.index_).kind != OpKind::leaf) {
      throw MisuseError("requested adjoint of a non-leaf node " + std::to_string(l.index_));
    }
  }
  std::vector<double> adj;
  backward(output, adj);
  std::vector<double> out;
  out.reserve(leaves.size());
  for (const Var& l : leaves) out.push_back(adj[static_cast<std::size_t>(l.index_)]);
  return out;
}

namespace {

Tape* common_tape(Var a, Var b) {
  if (a.tape() == nullptr || a.tape() != b.tape()) {
    throw MisuseError("operands live on different tapes");
  }
  return const_cast<Tape*>(a.tape());
}

Tape* owner(Var a) {
  if (a.tape() == nullptr) throw MisuseError("variable is not attached to a tape");
  return const_cast<Tape*>(a.tape());
}

}  // namespace

Var operator+(Var a, Var b) { return common_tape(a, b)->binary(OpKind::add, a, b); }
Var operator-(Var a, Var b) { return common_tape(a, b)->binary(OpKind::sub, a, b); }
Var operator*(Var a, Var b) { return common_tape(a, b)->binary(OpKind::mul, a, b); }
Var operator/(Var a, Var b) { return common_tape(a, b)->binary(OpKind::div, a, b); }
Var operator-(Var a) { return owner(a)->unary(OpKind::neg, a); }

Var operator+(Var a, double b) { return a + owner(a)->constant(b); }
Var operator+(double a, Var b) { return owner(b)->constant(a) + b; }
Var operator-(Var a, double b) { return a - owner(a)->constant(b); }
Var operator-(double a, Var b) { return owner(b)->constant(a) - b; }
Var operator*(Var a, double b) { return a * owner(a)->constant(b); }
Var operator*(double a, Var b) { return owner(b)->constant(a) * b; }
Var operator/(Var a, double b) { return a / owner(a)->constant(b); }
Var operator/(double a, Var b) { return owner(b)->constant(a) / b; }

Var& operator+=(Var& a, Var b) { return a = a + b; }
Var& operator-=(Var& a, Var b) { return a = a - b; }
Var& operator*=(Var& a, Var b) { return a = a * b; }
Var& operator+=(Var& a, double b) { return a = a + b; }

Var sin(Var a) { return owner(a)->unary(OpKind::sin, a); }
Var cos(Var a) { return owner(a)->unary(OpKind::cos, a); }
Var tanh(Var a) { return owner(a)->unary(OpKind::tanh, a); }
Var exp(Var a) { return owner(a)->unary(OpKind::exp, a); }
Var pow(Var a, double p) { return owner(a)->unary(OpKind::power, a, p); }

Jet2 forward_jet(const Tape& graph, Var output, std::span<const Var> inputs,
                 std::span<const Jet2> seeds) {
  if (inputs.size() != seeds.size()) {
    throw ConfigError("forward_jet: " + std::to_string(inputs.size()) + " inputs but " +
                      std::to_string(seeds.size()) + " seeds");
  }
  if (output.tape() != &graph) throw MisuseError("forward_jet: output not on graph");
  const auto n = static_cast<std::size_t>(output.index()) + 1;
  std::vector<Jet2> val(n);
  std::vector<int> seed_of(n, -1);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (inputs[k].tape() != &graph) throw MisuseError("forward_jet: input not on graph");
    if (static_cast<std::size_t>(inputs[k].index()) < n) {
      seed_of[static_cast<std::size_t>(inputs[k].index())] = static_cast<int>(k);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const TapeNode& nd = graph.node(static_cast<std::int32_t>(i));
    const auto a = [&] { return val[static_cast<std::size_t>(nd.lhs)]; };
    const auto b = [&] { return val[static_cast<std::size_t>(nd.rhs)]; };
    switch (nd.kind) {
      case OpKind::leaf:
        val[i] = seed_of[i] >= 0 ? seeds[static_cast<std::size_t>(seed_of[i])]
                                 : Jet2(nd.value, 0.0, 0.0);
        break;
      case OpKind::constant: val[i] = Jet2(nd.value, 0.0, 0.0); break;
      case OpKind::add: val[i] = a() + b(); break;
      case OpKind::sub: val[i] = a() - b(); break;
      case OpKind::mul: val[i] = a() * b(); break;
      case OpKind::div: val[i] = a() / b(); break;
      case OpKind::neg: val[i] = -a(); break;
      case OpKind::sin: val[i] = sin(a()); break;
      case OpKind::cos: val[i] = cos(a()); break;
      case OpKind::tanh: val[i] = tanh(a()); break;
      case OpKind::exp: val[i] = exp(a()); break;
      case OpKind::power: val[i] = pow(a(), nd.exponent); break;
      default:
        throw ConfigError("forward_jet: unsupported primitive at node " + std::to_string(i));
    }
    if (!is_finite(val[i])) {
      throw NumericalError("forward_jet: non-finite value at node " + std::to_string(i) + " (" +
                           to_string(nd.kind) + ")");
    }
  }
  return val[n - 1];
}

}  // namespace apnn::ad
