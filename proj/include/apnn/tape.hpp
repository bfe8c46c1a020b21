#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "apnn/jet.hpp"

namespace apnn::ad {

enum class OpKind : std::uint8_t {
  leaf,
  constant,
  add,
  sub,
  mul,
  div,
  neg,
  sin,
  cos,
  tanh,
  exp,
  power,
};

const char* to_string(OpKind kind);

/// One recorded primitive. Local partials are stored at record time so the
/// reverse sweep is a pure accumulation.
struct TapeNode {
  OpKind kind = OpKind::constant;
  std::int32_t lhs = -1;
  std::int32_t rhs = -1;
  double value = 0.0;
  double d_lhs = 0.0;
  double d_rhs = 0.0;
  double exponent = 0.0;  // power only
};

class Tape;

/// Handle to a node of a Tape. Cheap to copy; the tape must outlive it.
class Var {
 public:
  Var() = default;

  double value() const;
  std::int32_t index() const { return index_; }
  const Tape* tape() const { return tape_; }

 private:
  friend class Tape;
  Var(Tape* tape, std::int32_t index) : tape_(tape), index_(index) {}

  Tape* tape_ = nullptr;
  std::int32_t index_ = -1;
};

/// Scalar reverse-mode tape (Wengert list). Nodes are appended in evaluation
/// order, so parents always precede children and one backward sweep suffices.
class Tape {
 public:
  Tape() { nodes_.reserve(256); }

  Var leaf(double value);
  Var constant(double value);

  Var unary(OpKind kind, Var a, double exponent = 0.0);
  Var binary(OpKind kind, Var a, Var b);

  std::size_t size() const { return nodes_.size(); }
  const TapeNode& node(std::int32_t i) const { return nodes_[static_cast<std::size_t>(i)]; }
  void clear() { nodes_.clear(); }

  /// Adjoints of every node with respect to `output` (size() entries).
  void backward(Var output, std::vector<double>& adjoints) const;

  /// d output / d leaf for each requested leaf.
  std::vector<double> reverse_gradient(Var output, std::span<const Var> leaves) const;

 private:
  friend class Var;
  Var push(const TapeNode& n);
  void check_owned(Var v) const;

  std::vector<TapeNode> nodes_;
};

inline double Var::value() const { return tape_->node(index_).value; }

Var operator+(Var a, Var b);
Var operator-(Var a, Var b);
Var operator*(Var a, Var b);
Var operator/(Var a, Var b);
Var operator-(Var a);

Var operator+(Var a, double b);
Var operator+(double a, Var b);
Var operator-(Var a, double b);
Var operator-(double a, Var b);
Var operator*(Var a, double b);
Var operator*(double a, Var b);
Var operator/(Var a, double b);
Var operator/(double a, Var b);

Var& operator+=(Var& a, Var b);
Var& operator-=(Var& a, Var b);
Var& operator*=(Var& a, Var b);
Var& operator+=(Var& a, double b);

Var sin(Var a);
Var cos(Var a);
Var tanh(Var a);
Var exp(Var a);
Var pow(Var a, double p);

using VarJet = BasicJet<Var>;

/// Evaluates the graph recorded on `graph` up to `output` in forward (jet)
/// mode: each leaf listed in `inputs` takes the matching seed, all other
/// leaves are treated as constants. Throws NumericalError naming the first
/// node that produces a non-finite value.
Jet2 forward_jet(const Tape& graph, Var output, std::span<const Var> inputs,
                 std::span<const Jet2> seeds);

}  // namespace apnn::ad
