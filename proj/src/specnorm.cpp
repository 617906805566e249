#include "blochcert/specnorm.hpp"

#include <algorithm>
#include <cmath>

#include "blochcert/errors.hpp"

namespace blochcert {

namespace {

void require_square(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw InputError("matrix must be square and non-empty");
  if (!a.allFinite()) throw InputError("matrix has non-finite entries");
}

}  // namespace

Eigen::VectorXd singular_values(const ComplexMatrix& a) {
  require_square(a);
  if (a.rows() == 2) {
    // Closed form; the small eigenvalue comes from the determinant to avoid cancellation.
    const double p = std::norm(a(0, 0)) + std::norm(a(1, 0));
    const double q = std::norm(a(0, 1)) + std::norm(a(1, 1));
    const Complex b = std::conj(a(0, 0)) * a(0, 1) + std::conj(a(1, 0)) * a(1, 1);
    const double top = 0.5 * (p + q) + std::hypot(0.5 * (p - q), std::abs(b));
    const double low = top > 0.0 ? std::norm(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / top : 0.0;
    Eigen::VectorXd sv(2);
    sv << (low < 1e-14 * top ? 0.0 : std::sqrt(low)), std::sqrt(top);
    return sv;
  }
  const ComplexMatrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();  // ascending
  const double top = std::max(ev[ev.size() - 1], 0.0);
  const double floor = 1e-14 * top;
  Eigen::VectorXd sv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) sv[i] = ev[i] < floor ? 0.0 : std::sqrt(ev[i]);
  return sv;
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double operator_norm(const ComplexMatrix& a) {
  const auto sv = singular_values(a);
  return sv[sv.size() - 1];
}

double sigma_min(const ComplexMatrix& a) { return singular_values(a)[0]; }

SpectralData spectral_data(const ComplexMatrix& a) {
  const auto sv = singular_values(a);
  SpectralData s;
  s.frobenius = a.norm();
  s.opnorm = sv[sv.size() - 1];
  s.sigma_min = sv[0];
  s.det = a.determinant();
  s.absdet = std::abs(s.det);
  return s;
}

double yu_gu_bound(const ComplexMatrix& a) {
  require_square(a);
  const auto n = static_cast<double>(a.rows());
  if (a.rows() < 2) throw InputError("yu_gu_bound: needs n >= 2");
  const double absdet = std::abs(a.determinant());
  if (absdet == 0.0) throw DomainError("yu_gu_bound: matrix is singular");
  const double fro2 = a.squaredNorm();
  return std::pow(n - 1.0, n - 1.0) * absdet * absdet * std::pow(fro2, -(n - 1.0));
}

}  // namespace blochcert
