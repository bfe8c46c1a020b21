#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace apnn {

/// Space-time points with optional target values. `components` lists which
/// state components are enforced; `values` is components.size() x size().
struct PointSet {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<int> components;
  Eigen::MatrixXd values;

  std::size_t size() const { return x.size(); }
  bool empty() const { return x.empty(); }
  /// Rows `rows` of this set, in the given order.
  PointSet subset(const std::vector<std::size_t>& rows) const;
  /// Throws ConfigError when sizes are inconsistent.
  void check() const;
};

struct Dataset {
  PointSet data_train;
  PointSet data_validation;
  PointSet boundary;
  PointSet residual_train;
  PointSet residual_validation;
  std::vector<double> conservation_times;
  // Uniform periodic nodes; the composite trapezoid weight is the spacing.
  std::vector<double> quadrature_x;
  double quadrature_weight = 1.0;
  // Trapezoid integral of the initial total density on the same nodes.
  double initial_population = 0.0;
  // Indices (into the unsplit sets) of the validation rows.
  std::vector<std::size_t> data_validation_index;
  std::vector<std::size_t> residual_validation_index;
};

/// Random disjoint split of indices [0, n) with round(fraction * n)
/// validation rows; both parts sorted ascending.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

SplitIndices split_validation(std::size_t n, double fraction, std::uint64_t seed);

/// Table of a nonnegative field on nodes (x_i, t_k); row k, column i.
struct FieldTable {
  std::vector<double> x;
  std::vector<double> t;
  Eigen::MatrixXd values;  // t.size() x x.size()
};

/// Draws n nodes with replacement with probability proportional to the
/// field value. Returns (x, t) pairs as a PointSet without values.
PointSet importance_sample(const FieldTable& field, std::size_t n, std::uint64_t seed);

/// Factor n = nx * nt with nx a divisor of n closest (in log ratio) to
/// sqrt(n * aspect), aspect being the desired nx / nt.
std::pair<std::size_t, std::size_t> lattice_shape(std::size_t n, double aspect);

/// nx * nt lattice on [a, b) x [t0, t1]: x at cell midpoints, t including
/// both ends (t0 alone when nt = 1).
PointSet uniform_lattice(double a, double b, double t0, double t1, std::size_t nx, std::size_t nt);

/// n points uniformly distributed on [a, b) x [t0, t1].
PointSet uniform_random(double a, double b, double t0, double t1, std::size_t n,
                        std::uint64_t seed);

}  // namespace apnn
