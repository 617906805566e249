#pragma once

#include "blochcert/holomap.hpp"

namespace blochcert {

/// Pointwise summary of a square complex matrix A (typically a Jacobian).
///
/// opnorm and sigma_min are the square roots of the largest and smallest
/// eigenvalues of A^* A, i.e. the extreme singular values.
struct SpectralData {
  double frobenius = 0.0;
  double opnorm = 0.0;
  double sigma_min = 0.0;
  double absdet = 0.0;
  Complex det{0.0, 0.0};
};

SpectralData spectral_data(const ComplexMatrix& a);

/// Singular values in ascending order, via the Hermitian eigenproblem of A^* A.
/// Eigenvalues below 1e-14 * opnorm^2 are reported as 0.
Eigen::VectorXd singular_values(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);
double operator_norm(const ComplexMatrix& a);
double sigma_min(const ComplexMatrix& a);

/// Lower bound on the smallest eigenvalue of A^* A for non-singular A:
///   (n-1)^{n-1} |det A|^2 ||A||^{-2(n-1)}   (||.|| = Frobenius).
/// Throws InputError for n < 2 and DomainError for singular A.
double yu_gu_bound(const ComplexMatrix& a);

}  // namespace blochcert
