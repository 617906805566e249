#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace blochcert {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Exponent tuple of a monomial z_1^{e_1} ... z_n^{e_n}.
using MultiIndex = std::vector<int>;

/// Euclidean norm on C^n.
inline double norm(const ComplexVector& z) { return z.norm(); }

/// A polynomial map C^n -> C^n stored as a sparse table from monomial
/// exponents to coefficient vectors (one entry per output component).
///
/// The table always holds at least one term; the zero map is represented by
/// a zero constant term.
class PolyMap {
 public:
  using TermTable = std::map<MultiIndex, ComplexVector>;

  /// Zero map on C^n.
  explicit PolyMap(int n);

  static PolyMap identity(int n);
  /// z -> B z.
  static PolyMap linear(const ComplexMatrix& B);

  int dim() const { return n_; }
  const TermTable& terms() const { return terms_; }
  int degree() const;

  /// Adds coeff to the coefficient of the monomial (accumulating); exact zeros are dropped.
  void add_term(const MultiIndex& exponents, const ComplexVector& coeff);

  /// Drops terms whose coefficient vector is exactly zero; the zero map keeps a zero constant.
  void prune();

  // Flat view of the term table for evaluation: exponents row-major (term, var),
  // one coefficient column per term, and the largest exponent per variable.
  struct Flat {
    std::vector<int> exponents;
    ComplexMatrix coeffs;
    std::vector<int> max_exponent;
  };

  const Flat& flat() const { return flat_; }

 private:
  void check_term(const MultiIndex& exponents, const ComplexVector& coeff) const;
  void rebuild_flat();

  int n_;
  TermTable terms_;
  Flat flat_;
};

ComplexVector evaluate(const PolyMap& f, const ComplexVector& z);

/// Exact Jacobian, entry (i, j) = d f_i / d z_j.
ComplexMatrix jacobian(const PolyMap& f, const ComplexVector& z);

/// Value and Jacobian in one pass.
void evaluate_with_jacobian(const PolyMap& f, const ComplexVector& z, ComplexVector& value,
                            ComplexMatrix& jac);

/// c * f, coefficient-wise.
PolyMap scaled(const PolyMap& f, Complex c);

/// zeta -> out_scale * (f(center + scale * zeta) - out_shift), expanded exactly.
PolyMap affine_precompose(const PolyMap& f, const ComplexVector& center, double scale,
                          const ComplexVector& out_shift, double out_scale);

/// zeta -> pre_scale * a_inv * (f(center + scale * zeta) - f(center)).
PolyMap matrix_precompose(const PolyMap& f, const ComplexMatrix& a_inv,
                          const ComplexVector& center, double scale, double pre_scale);

}  // namespace blochcert
