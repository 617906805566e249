#pragma once

#include <cstdint>
#include <random>

#include "blochcert/holomap.hpp"

namespace blochcert::testing {

inline double uniform(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline Complex random_complex(std::mt19937_64& rng) { return {uniform(rng), uniform(rng)}; }

inline ComplexVector random_vector(int n, std::mt19937_64& rng, double len = 1.0) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = random_complex(rng);
  return v * (len * uniform(rng, 0.0, 1.0) / v.norm());
}

inline ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = random_complex(rng);
  return a;
}

/// A map with `terms` random monomials of total degree <= degree.
inline PolyMap random_polymap(int n, int degree, int terms, std::mt19937_64& rng) {
  PolyMap f(n);
  for (int t = 0; t < terms; ++t) {
    MultiIndex e(n, 0);
    const int d = static_cast<int>(rng() % (degree + 1));
    for (int k = 0; k < d; ++k) ++e[rng() % n];
    ComplexVector c(n);
    for (int i = 0; i < n; ++i) c[i] = random_complex(rng);
    f.add_term(e, c);
  }
  return f;
}

/// Central differences of evaluate along each coordinate (real step, holomorphic map).
inline ComplexMatrix finite_difference_jacobian(const PolyMap& f, const ComplexVector& z, double h) {
  const int n = f.dim();
  ComplexMatrix j(n, n);
  for (int k = 0; k < n; ++k) {
    ComplexVector zp = z, zm = z;
    zp[k] += h;
    zm[k] -= h;
    j.col(k) = (evaluate(f, zp) - evaluate(f, zm)) / (2.0 * h);
  }
  return j;
}

inline ComplexVector cvec(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

}  // namespace blochcert::testing
