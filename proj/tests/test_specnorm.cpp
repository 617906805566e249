#include <cmath>

#include <Eigen/SVD>

#include "doctest.h"

#include "blochcert/errors.hpp"
#include "blochcert/specnorm.hpp"
#include "test_support.hpp"

using namespace blochcert;
using namespace blochcert::testing;

namespace {

ComplexMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("spectral data of fixture matrices") {
  const auto id = spectral_data(ComplexMatrix::Identity(2, 2));
  CHECK(id.frobenius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(id.opnorm == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(id.sigma_min == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(id.absdet == doctest::Approx(1.0).epsilon(1e-15));

  const auto d = spectral_data(m2(2.0, 0.0, 0.0, 0.5));
  CHECK(d.frobenius == doctest::Approx(std::sqrt(4.25)).epsilon(1e-15));
  CHECK(d.opnorm == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d.sigma_min == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.absdet == doctest::Approx(1.0).epsilon(1e-15));

  // Shear: singular values are the golden ratio and its inverse.
  const auto s = spectral_data(m2(1.0, 1.0, 0.0, 1.0));
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(s.opnorm == doctest::Approx(phi).epsilon(1e-14));
  CHECK(s.sigma_min == doctest::Approx(1.0 / phi).epsilon(1e-14));
  CHECK(s.sigma_min == doctest::Approx(0.6180339887498949).epsilon(1e-14));
}

TEST_CASE("singular matrices report sigma_min 0") {
  CHECK(sigma_min(m2(1.0, 1.0, 0.0, 0.0)) == 0.0);
  ComplexMatrix z = ComplexMatrix::Zero(3, 3);
  z(0, 0) = 1.0;
  CHECK(sigma_min(z) == 0.0);
  CHECK(operator_norm(z) == doctest::Approx(1.0));
}

TEST_CASE("yu_gu_bound fixtures and errors") {
  CHECK(yu_gu_bound(ComplexMatrix::Identity(2, 2)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(yu_gu_bound(m2(2.0, 0.0, 0.0, 1.0)) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(yu_gu_bound(m2(3.0, 0.0, 0.0, 1.0)) == doctest::Approx(0.9).epsilon(1e-15));
  // n = 3 identity: 2^2 * 1 / 3^2
  CHECK(yu_gu_bound(ComplexMatrix::Identity(3, 3)) == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK_THROWS_AS(yu_gu_bound(m2(1.0, 1.0, 1.0, 1.0)), DomainError);
  CHECK_THROWS_AS(yu_gu_bound(ComplexMatrix::Identity(1, 1)), InputError);
}

TEST_CASE("singular value identities on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + trial % 4;
    const ComplexMatrix a = random_matrix(n, rng);
    const Eigen::VectorXd sv = singular_values(a);
    const auto sd = spectral_data(a);
    CHECK(std::abs(sv.prod() - sd.absdet) <= 1e-9 * std::max(1.0, sd.absdet));
    CHECK(std::abs(sv.squaredNorm() - sd.frobenius * sd.frobenius) <= 1e-9 * sd.frobenius * sd.frobenius);
    CHECK(sd.sigma_min <= sd.opnorm);
    CHECK(sd.opnorm <= sd.frobenius * (1 + 1e-15));
    CHECK(std::pow(sd.sigma_min, n) <= sd.absdet * (1 + 1e-9) + 1e-300);
    CHECK(sd.absdet <= std::pow(sd.opnorm, n) * (1 + 1e-9));

    // Independent route through a one-sided Jacobi SVD.
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const Eigen::VectorXd ref = svd.singularValues();
    CHECK(std::abs(ref[0] - sd.opnorm) < 1e-10);
    CHECK(std::abs(ref[n - 1] - sd.sigma_min) < 1e-7);
  }
}

TEST_CASE("yu_gu_bound is a strict lower bound on random matrices") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + trial % 3;
    const ComplexMatrix a = random_matrix(n, rng);
    const auto sd = spectral_data(a);
    if (sd.absdet < 1e-8) continue;
    const double lambda = sd.sigma_min * sd.sigma_min;
    CHECK(lambda > yu_gu_bound(a));
    CHECK(std::pow(lambda, n) <= sd.absdet * sd.absdet * (1 + 1e-9));
  }
}
