#include "apnn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "apnn/error.hpp"
#include "apnn/rng.hpp"

namespace apnn {

PointSet PointSet::subset(const std::vector<std::size_t>& rows) const {
  PointSet out;
  out.components = components;
  out.x.reserve(rows.size());
  out.t.reserve(rows.size());
  const bool has_values = values.cols() > 0;
  if (has_values) out.values.resize(values.rows(), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t r = rows[k];
    if (r >= size()) throw InternalError("PointSet::subset: row out of range");
    out.x.push_back(x[r]);
    out.t.push_back(t[r]);
    if (has_values) out.values.col(static_cast<Eigen::Index>(k)) = values.col(static_cast<Eigen::Index>(r));
  }
  return out;
}

void PointSet::check() const {
  if (x.size() != t.size()) throw ConfigError("point set: x and t sizes differ");
  if (!components.empty()) {
    if (values.rows() != static_cast<Eigen::Index>(components.size()) ||
        values.cols() != static_cast<Eigen::Index>(x.size())) {
      throw ConfigError("point set: values have the wrong shape");
    }
  }
}

SplitIndices split_validation(std::size_t n, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw ConfigError("validation fraction must lie in [0, 1)");
  }
  const auto n_val = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (n > 0 && n_val >= n) throw ConfigError("validation split leaves no training points");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  // Fisher-Yates on the portable generator.
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  SplitIndices s;
  s.validation.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_val));
  s.train.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_val), perm.end());
  std::sort(s.validation.begin(), s.validation.end());
  std::sort(s.train.begin(), s.train.end());
  return s;
}

PointSet importance_sample(const FieldTable& field, std::size_t n, std::uint64_t seed) {
  const Eigen::Index nt = field.values.rows();
  const Eigen::Index nx = field.values.cols();
  if (nt != static_cast<Eigen::Index>(field.t.size()) ||
      nx != static_cast<Eigen::Index>(field.x.size())) {
    throw ConfigError("importance_sample: table shape does not match its axes");
  }
  std::vector<double> cdf(static_cast<std::size_t>(nt * nx));
  double total = 0.0;
  for (Eigen::Index k = 0; k < nt; ++k) {
    for (Eigen::Index i = 0; i < nx; ++i) {
      const double v = field.values(k, i);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ConfigError("importance_sample: field must be finite and nonnegative");
      }
      total += v;
      cdf[static_cast<std::size_t>(k * nx + i)] = total;
    }
  }
  if (!(total > 0.0)) throw ConfigError("importance_sample: field is identically zero");
  Rng rng(seed);
  PointSet out;
  out.x.reserve(n);
  out.t.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    // First node whose cumulative weight exceeds u; zero-weight nodes are never hit.
    auto idx = static_cast<Eigen::Index>(it - cdf.begin());
    out.x.push_back(field.x[static_cast<std::size_t>(idx % nx)]);
    out.t.push_back(field.t[static_cast<std::size_t>(idx / nx)]);
  }
  return out;
}

std::pair<std::size_t, std::size_t> lattice_shape(std::size_t n, double aspect) {
  if (n == 0) throw ConfigError("lattice_shape: need at least one point");
  if (!(aspect > 0.0)) throw ConfigError("lattice_shape: aspect must be positive");
  const double target = std::sqrt(static_cast<double>(n) * aspect);
  std::size_t best = 1;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const double gap = std::abs(std::log(static_cast<double>(d) / target));
    if (gap < best_gap) {
      best_gap = gap;
      best = d;
    }
  }
  return {best, n / best};
}

PointSet uniform_lattice(double a, double b, double t0, double t1, std::size_t nx, std::size_t nt) {
  if (nx == 0 || nt == 0) throw ConfigError("uniform_lattice: empty lattice");
  PointSet out;
  out.x.reserve(nx * nt);
  out.t.reserve(nx * nt);
  const double hx = (b - a) / static_cast<double>(nx);
  for (std::size_t k = 0; k < nt; ++k) {
    const double t = nt == 1 ? t0 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(nt - 1);
    for (std::size_t i = 0; i < nx; ++i) {
      out.x.push_back(a + (static_cast<double>(i) + 0.5) * hx);
      out.t.push_back(t);
    }
  }
  return out;
}

PointSet uniform_random(double a, double b, double t0, double t1, std::size_t n,
                        std::uint64_t seed) {
  Rng rng(seed);
  PointSet out;
  out.x.reserve(n);
  out.t.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.x.push_back(rng.uniform(a, b));
    out.t.push_back(rng.uniform(t0, t1));
  }
  return out;
}

}  // namespace apnn
