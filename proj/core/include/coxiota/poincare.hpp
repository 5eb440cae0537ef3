#ifndef COXIOTA_POINCARE_HPP
#define COXIOTA_POINCARE_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "coxiota/twisted.hpp"

namespace coxiota {

/// Polynomial with arbitrary-precision integer coefficients, index = degree.
class IntPolynomial {
 public:
  IntPolynomial() = default;  // zero
  explicit IntPolynomial(std::vector<mpz_class> coeffs);

  static IntPolynomial one() { return IntPolynomial({mpz_class(1)}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  mpz_class coeff(int d) const {
    return (d >= 0 && d <= degree()) ? coeffs_[d] : mpz_class(0);
  }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const IntPolynomial& o) const { return !(*this == o); }

  mpz_class eval(const mpz_class& t) const;
  bool palindromic() const;
  bool is_zero() const { return coeffs_.empty(); }

  /// "1 + 2*t + 3*t^2"; zero coefficients are skipped, zero prints "0".
  std::string text() const;

 private:
  std::vector<mpz_class> coeffs_;  // no trailing zeros
};

/// 1 + t + t^2 + ... + t^top.
IntPolynomial geometric_poly(int top);

/// Length generating function of an enumeration (layer sizes).
IntPolynomial poincare_w(const Enumeration& en);

/// Rank generating function of iota(theta); requires a finite type.
IntPolynomial poincare_iota(const CoxeterSystem& sys,
                            const TwistedAutomorphism& theta,
                            const Budget& budget = {});

/// Rank-truncated series for infinite groups, with an explicit validity
/// marker; never fed to the factorization test.
struct TruncatedSeries {
  IntPolynomial poly;
  int valid_up_to = 0;
};
TruncatedSeries poincare_iota_truncated(const CoxeterSystem& sys,
                                        const TwistedAutomorphism& theta,
                                        int max_rank, const Budget& budget = {});

/// Generating function of Fix(theta) by the length over its canonical
/// Coxeter generators (Cayley-graph distance). The fixed subgroup is taken
/// from the full group enumeration, so a finite type is required.
IntPolynomial poincare_fix(const CoxeterSystem& sys,
                           const TwistedAutomorphism& theta,
                           const Budget& budget = {});

/// m(s, theta(s)) in {1, 2, infinity} for all s.
bool prop51_condition(const CoxeterSystem& sys, const TwistedAutomorphism& theta);

struct FactorizationReport {
  IntPolynomial poin_w, poin_iota, poin_fix;
  bool factors = false;
  // Division of Poin(W) by Poin(Fix), for the failure report.
  IntPolynomial quotient, remainder;
};

/// Exact test of Poin(W) = Poin(iota) * Poin(Fix).
FactorizationReport factors_through(const CoxeterSystem& sys,
                                    const TwistedAutomorphism& theta,
                                    const Budget& budget = {});

/// Closed form I(n;t) = t^n prod_{i<n} (1 + t^2 + ... + t^{4i}), cross-checked
/// against the enumerated fixed-point-free involutions of S_{2n}. n <= 4.
IntPolynomial fpf_involution_series(int n);

/// Direct enumeration with inversion counting (the permutation model).
IntPolynomial fpf_involution_series_enumerated(int n);

/// Sum of t^{(inv - n)/2} over fixed-point-free involutions of S_{2n} equals
/// Poin(iota;t) for the A_{2n-1} flip, and that polynomial is palindromic.
bool fpf_weight_identity_check(int n);

}  // namespace coxiota

#endif  // COXIOTA_POINCARE_HPP
