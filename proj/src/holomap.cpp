#include "blochcert/holomap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "blochcert/errors.hpp"

namespace blochcert {

namespace {

void check_dim(const PolyMap& f, const ComplexVector& z, const char* what) {
  if (z.size() != f.dim()) {
    throw InputError(std::string(what) + ": point has length " + std::to_string(z.size()) +
                     ", map dimension is " + std::to_string(f.dim()));
  }
}

// Fills powers with z_j^k, variable j starting at offset[j].
void power_table(const PolyMap::Flat& flat, const ComplexVector& z, std::vector<Complex>& powers,
                 std::vector<int>& offset) {
  const auto n = static_cast<int>(flat.max_exponent.size());
  offset.resize(n);
  int total = 0;
  for (int j = 0; j < n; ++j) {
    offset[j] = total;
    total += flat.max_exponent[j] + 1;
  }
  powers.resize(total);
  for (int j = 0; j < n; ++j) {
    Complex* p = powers.data() + offset[j];
    p[0] = 1.0;
    for (int k = 1; k <= flat.max_exponent[j]; ++k) p[k] = p[k - 1] * z[j];
  }
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

PolyMap::PolyMap(int n) : n_(n) {
  if (n < 1) throw InputError("PolyMap: dimension must be >= 1");
  terms_.emplace(MultiIndex(n, 0), ComplexVector::Zero(n));
  rebuild_flat();
}

PolyMap PolyMap::identity(int n) {
  return linear(ComplexMatrix::Identity(n, n));
}

PolyMap PolyMap::linear(const ComplexMatrix& B) {
  if (B.rows() != B.cols()) throw InputError("PolyMap::linear: matrix must be square");
  const int n = static_cast<int>(B.rows());
  PolyMap f(n);
  for (int j = 0; j < n; ++j) {
    MultiIndex e(n, 0);
    e[j] = 1;
    f.add_term(e, B.col(j));
  }
  f.prune();
  return f;
}

void PolyMap::rebuild_flat() {
  const auto terms = static_cast<Eigen::Index>(terms_.size());
  flat_.exponents.clear();
  flat_.exponents.reserve(terms_.size() * n_);
  flat_.coeffs.resize(n_, terms);
  flat_.max_exponent.assign(n_, 0);
  Eigen::Index t = 0;
  for (const auto& [e, c] : terms_) {
    for (int j = 0; j < n_; ++j) {
      flat_.exponents.push_back(e[j]);
      flat_.max_exponent[j] = std::max(flat_.max_exponent[j], e[j]);
    }
    flat_.coeffs.col(t++) = c;
  }
}

int PolyMap::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void PolyMap::check_term(const MultiIndex& exponents, const ComplexVector& coeff) const {
  if (static_cast<int>(exponents.size()) != n_ || coeff.size() != n_) {
    throw InputError("PolyMap: term has wrong length for dimension " + std::to_string(n_));
  }
  for (int e : exponents) {
    if (e < 0) throw InputError("PolyMap: negative exponent");
  }
  if (!coeff.allFinite()) throw InputError("PolyMap: non-finite coefficient");
}

void PolyMap::add_term(const MultiIndex& exponents, const ComplexVector& coeff) {
  check_term(exponents, coeff);
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) it->second += coeff;
  prune();
}

void PolyMap::prune() {
  std::erase_if(terms_, [](const auto& t) { return t.second.isZero(0.0); });
  if (terms_.empty()) terms_.emplace(MultiIndex(n_, 0), ComplexVector::Zero(n_));
  rebuild_flat();
}

ComplexVector evaluate(const PolyMap& f, const ComplexVector& z) {
  check_dim(f, z, "evaluate");
  const int n = f.dim();
  const auto& flat = f.flat();
  thread_local std::vector<Complex> powers;
  thread_local std::vector<int> offset;
  power_table(flat, z, powers, offset);
  ComplexVector out = ComplexVector::Zero(n);
  const int* e = flat.exponents.data();
  for (Eigen::Index t = 0; t < flat.coeffs.cols(); ++t, e += n) {
    Complex m = 1.0;
    for (int j = 0; j < n; ++j) m *= powers[offset[j] + e[j]];
    out += m * flat.coeffs.col(t);
  }
  return out;
}

void evaluate_with_jacobian(const PolyMap& f, const ComplexVector& z, ComplexVector& value,
                            ComplexMatrix& jac) {
  check_dim(f, z, "jacobian");
  const int n = f.dim();
  const auto& flat = f.flat();
  thread_local std::vector<Complex> powers;
  thread_local std::vector<int> offset;
  thread_local std::vector<Complex> factor;
  power_table(flat, z, powers, offset);
  factor.resize(n);
  value.setZero(n);
  jac.setZero(n, n);
  const int* e = flat.exponents.data();
  for (Eigen::Index t = 0; t < flat.coeffs.cols(); ++t, e += n) {
    Complex m = 1.0;
    for (int j = 0; j < n; ++j) {
      factor[j] = powers[offset[j] + e[j]];
      m *= factor[j];
    }
    const auto c = flat.coeffs.col(t);
    value += m * c;
    for (int j = 0; j < n; ++j) {
      if (e[j] == 0) continue;
      // d/dz_j of the monomial: e_j z_j^{e_j - 1} times the other factors.
      Complex d = static_cast<double>(e[j]) * powers[offset[j] + e[j] - 1];
      for (int k = 0; k < n; ++k) {
        if (k != j) d *= factor[k];
      }
      jac.col(j) += d * c;
    }
  }
}

ComplexMatrix jacobian(const PolyMap& f, const ComplexVector& z) {
  ComplexVector value;
  ComplexMatrix jac;
  evaluate_with_jacobian(f, z, value, jac);
  return jac;
}

PolyMap scaled(const PolyMap& f, Complex c) {
  PolyMap g(f.dim());
  for (const auto& [e, coeff] : f.terms()) g.add_term(e, c * coeff);
  return g;
}

PolyMap affine_precompose(const PolyMap& f, const ComplexVector& center, double scale,
                          const ComplexVector& out_shift, double out_scale) {
  const int n = f.dim();
  if (center.size() != n || out_shift.size() != n) {
    throw InputError("affine_precompose: dimension mismatch");
  }
  if (!(scale > 0.0)) throw InputError("affine_precompose: scale must be positive");
  if (out_scale == 0.0) throw InputError("affine_precompose: output scale must be nonzero");

  PolyMap g(n);
  for (const auto& [e, coeff] : f.terms()) {
    // (c_j + s zeta_j)^{e_j} = sum_k C(e_j, k) c_j^{e_j - k} s^k zeta_j^k
    std::vector<std::vector<Complex>> factors(n);
    for (int j = 0; j < n; ++j) {
      factors[j].resize(e[j] + 1);
      for (int k = 0; k <= e[j]; ++k) {
        factors[j][k] = binomial(e[j], k) * std::pow(center[j], e[j] - k) * std::pow(scale, k);
      }
    }
    // Walk the cartesian product of per-variable expansion orders.
    MultiIndex k(n, 0);
    while (true) {
      Complex w = 1.0;
      for (int j = 0; j < n; ++j) w *= factors[j][k[j]];
      if (w != Complex(0.0)) g.add_term(k, w * coeff);
      int j = 0;
      while (j < n && k[j] == e[j]) k[j++] = 0;
      if (j == n) break;
      ++k[j];
    }
  }
  g.add_term(MultiIndex(n, 0), -out_shift);
  g = scaled(g, out_scale);
  g.prune();
  return g;
}

PolyMap matrix_precompose(const PolyMap& f, const ComplexMatrix& a_inv,
                          const ComplexVector& center, double scale, double pre_scale) {
  const int n = f.dim();
  if (a_inv.rows() != n || a_inv.cols() != n) {
    throw InputError("matrix_precompose: matrix must be n x n");
  }
  if (!a_inv.allFinite()) throw InputError("matrix_precompose: non-finite matrix");
  const PolyMap shifted = affine_precompose(f, center, scale, evaluate(f, center), 1.0);
  PolyMap g(n);
  const ComplexMatrix m = pre_scale * a_inv;
  for (const auto& [e, coeff] : shifted.terms()) g.add_term(e, m * coeff);
  g.prune();
  return g;
}

}  // namespace blochcert
