#include "coxiota/poincare.hpp"

#include <algorithm>
#include <sstream>

namespace coxiota {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs)
    : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<mpz_class> out(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<mpz_class> out(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (coeffs_.empty() || o.coeffs_.empty()) return IntPolynomial();
  std::vector<mpz_class> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(),
                 o.coeffs_[j].get_mpz_t());
  return IntPolynomial(std::move(out));
}

mpz_class IntPolynomial::eval(const mpz_class& t) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

bool IntPolynomial::palindromic() const {
  for (int d = 0; d <= degree(); ++d)
    if (coeff(d) != coeff(degree() - d)) return false;
  return true;
}

std::string IntPolynomial::text() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = 0; d <= degree(); ++d) {
    if (sgn(coeff(d)) == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (d == 0) {
      os << coeff(d);
    } else {
      if (coeff(d) != 1) os << coeff(d) << "*";
      os << "t";
      if (d > 1) os << "^" << d;
    }
  }
  return os.str();
}

IntPolynomial geometric_poly(int top) {
  std::vector<mpz_class> c(static_cast<std::size_t>(top) + 1, mpz_class(1));
  return IntPolynomial(std::move(c));
}

namespace {

// Quotient and remainder for a monic divisor.
void divmod_monic(const IntPolynomial& num, const IntPolynomial& den,
                  IntPolynomial* quot, IntPolynomial* rem) {
  std::vector<mpz_class> r(num.coefficients());
  std::vector<mpz_class> q;
  const int dd = den.degree();
  if (dd < 0 || den.coeff(dd) != 1) fail(errc::bad_input, "divisor must be monic");
  const int dn = num.degree();
  if (dn >= dd) q.assign(static_cast<std::size_t>(dn - dd) + 1, mpz_class(0));
  for (int d = dn; d >= dd; --d) {
    const mpz_class c = r[d];
    if (sgn(c) == 0) continue;
    q[d - dd] = c;
    for (int k = 0; k <= dd; ++k) r[d - dd + k] -= c * den.coeff(k);
  }
  *quot = IntPolynomial(std::move(q));
  *rem = IntPolynomial(std::move(r));
}

}  // namespace

IntPolynomial poincare_w(const Enumeration& en) {
  std::vector<mpz_class> c(static_cast<std::size_t>(en.num_layers()));
  for (int l = 0; l < en.num_layers(); ++l)
    c[l] = static_cast<long>(en.layer(l).size());
  return IntPolynomial(std::move(c));
}

IntPolynomial poincare_iota(const CoxeterSystem& sys,
                            const TwistedAutomorphism& theta,
                            const Budget& budget) {
  if (!sys.is_finite())
    fail(errc::infinite_group, "poincare_iota requires a finite type");
  TwistedEnumeration ten = TwistedEnumeration::run(sys, theta, std::nullopt, budget);
  std::vector<mpz_class> c;
  for (int i : ten.iota_indices()) {
    const int r = static_cast<int>(ten.at(i).rho);
    if (r >= static_cast<int>(c.size())) c.resize(r + 1);
    c[r] += 1;
  }
  return IntPolynomial(std::move(c));
}

TruncatedSeries poincare_iota_truncated(const CoxeterSystem& sys,
                                        const TwistedAutomorphism& theta,
                                        int max_rank, const Budget& budget) {
  TwistedEnumeration ten = TwistedEnumeration::run(sys, theta, max_rank, budget);
  std::vector<mpz_class> c;
  for (int i : ten.iota_indices()) {
    const int r = static_cast<int>(ten.at(i).rho);
    if (r >= static_cast<int>(c.size())) c.resize(r + 1);
    c[r] += 1;
  }
  return TruncatedSeries{IntPolynomial(std::move(c)), max_rank};
}

IntPolynomial poincare_fix(const CoxeterSystem& sys,
                           const TwistedAutomorphism& theta,
                           const Budget& budget) {
  if (!sys.is_finite())
    fail(errc::infinite_fix, "poincare_fix requires a finite group");
  bool had_infinite_pair = false;
  const std::vector<Element> gens =
      fixed_subgroup_generators(sys, theta, &had_infinite_pair);
  if (had_infinite_pair)
    fail(errc::unsupported_infinite_pair,
         "a pair {s, theta(s)} has infinite bond");

  // Fix(theta) filtered out of the full enumeration.
  Enumeration en = sys.enumerate(std::nullopt, budget);
  std::vector<Element> fix;
  for (std::int64_t i = 0; i < en.size(); ++i)
    if (apply_theta(sys, theta, en.at(i)) == en.at(i)) fix.push_back(en.at(i));

  // BFS over the Cayley graph of the canonical generators gives ell_theta.
  std::unordered_map<std::size_t, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < fix.size(); ++i) index[fix[i].hash()].push_back(i);
  auto find = [&](const Element& e) -> std::ptrdiff_t {
    const auto it = index.find(e.hash());
    if (it == index.end()) return -1;
    for (std::size_t i : it->second)
      if (fix[i] == e) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };

  std::vector<std::int64_t> dist(fix.size(), -1);
  std::vector<std::size_t> frontier;
  const std::ptrdiff_t e0 = find(sys.identity());
  dist[e0] = 0;
  frontier.push_back(static_cast<std::size_t>(e0));
  std::vector<mpz_class> c{mpz_class(1)};
  std::int64_t level = 0;
  while (!frontier.empty()) {
    ++level;
    std::vector<std::size_t> next;
    for (std::size_t i : frontier)
      for (const Element& g : gens) {
        const std::ptrdiff_t j = find(sys.multiply(fix[i], g));
        if (j < 0)
          fail(errc::unsupported_infinite_pair,
               "internal: generator step leaves Fix(theta)");
        if (dist[j] == -1) {
          dist[j] = level;
          next.push_back(static_cast<std::size_t>(j));
        }
      }
    if (!next.empty()) {
      if (level >= static_cast<std::int64_t>(c.size())) c.resize(level + 1);
      c[level] = static_cast<long>(next.size());
    }
    frontier = std::move(next);
  }
  for (std::int64_t d : dist)
    if (d == -1)
      fail(errc::unsupported_infinite_pair,
           "canonical generators do not reach all of Fix(theta)");
  return IntPolynomial(std::move(c));
}

bool prop51_condition(const CoxeterSystem& sys, const TwistedAutomorphism& theta) {
  for (int s = 0; s < sys.rank(); ++s) {
    const int m = sys.coxeter_matrix().bond(s, theta(s));
    if (m != 1 && m != 2 && m != CoxeterMatrix::kInfinite) return false;
  }
  return true;
}

FactorizationReport factors_through(const CoxeterSystem& sys,
                                    const TwistedAutomorphism& theta,
                                    const Budget& budget) {
  if (!sys.is_finite())
    fail(errc::infinite_group, "factorization test requires a finite type");
  FactorizationReport report;
  report.poin_w = poincare_w(sys.enumerate(std::nullopt, budget));
  report.poin_iota = poincare_iota(sys, theta, budget);
  report.poin_fix = poincare_fix(sys, theta, budget);
  report.factors = report.poin_iota * report.poin_fix == report.poin_w;
  divmod_monic(report.poin_w, report.poin_fix, &report.quotient, &report.remainder);
  return report;
}

// ---------------------------------------------------------------------------
// Fixed-point-free involutions

IntPolynomial fpf_involution_series_enumerated(int n) {
  const int size = 2 * n;
  std::vector<int> perm(size, -1);
  std::vector<mpz_class> c;
  auto count_inversions = [&perm, size]() {
    int inv = 0;
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j)
        if (perm[i] > perm[j]) ++inv;
    return inv;
  };
  auto rec = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < size; ++i)
      if (perm[i] == -1) {
        first = i;
        break;
      }
    if (first == -1) {
      const int inv = count_inversions();
      if (inv >= static_cast<int>(c.size())) c.resize(inv + 1);
      c[inv] += 1;
      return;
    }
    for (int j = first + 1; j < size; ++j) {
      if (perm[j] != -1) continue;
      perm[first] = j;
      perm[j] = first;
      self(self);
      perm[first] = -1;
      perm[j] = -1;
    }
  };
  rec(rec);
  return IntPolynomial(std::move(c));
}

IntPolynomial fpf_involution_series(int n) {
  if (n < 1 || n > 4) fail(errc::bad_input, "fpf series is desk-bounded to n <= 4");
  std::vector<mpz_class> tn(static_cast<std::size_t>(n) + 1, mpz_class(0));
  tn[n] = 1;
  IntPolynomial closed{std::move(tn)};
  for (int i = 0; i < n; ++i) {
    std::vector<mpz_class> factor(static_cast<std::size_t>(4 * i) + 1, mpz_class(0));
    for (int d = 0; d <= 4 * i; d += 2) factor[d] = 1;
    closed = closed * IntPolynomial(std::move(factor));
  }
  if (closed != fpf_involution_series_enumerated(n))
    fail(errc::bad_input, "closed form disagrees with the permutation model");
  return closed;
}

bool fpf_weight_identity_check(int n) {
  if (n < 1 || n > 4)
    fail(errc::bad_input, "the weight identity check is desk-bounded");

  // Sum of t^{wt}, wt = (inv - n) / 2, over F(2n).
  const IntPolynomial by_inv = fpf_involution_series_enumerated(n);
  std::vector<mpz_class> shifted;
  for (int d = 0; d <= by_inv.degree(); ++d) {
    if (sgn(by_inv.coeff(d)) == 0) continue;
    if ((d - n) % 2 != 0 || d < n) return false;
    const int wt = (d - n) / 2;
    if (wt >= static_cast<int>(shifted.size())) shifted.resize(wt + 1);
    shifted[wt] += by_inv.coeff(d);
  }
  const IntPolynomial by_wt{std::move(shifted)};

  // A_{2n-1} with the flip (the identity when the rank is one).
  const int rank = 2 * n - 1;
  std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 2));
  for (int i = 0; i < rank; ++i) m[i][i] = 1;
  for (int i = 0; i + 1 < rank; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  const CoxeterSystem sys = CoxeterSystem::build(CoxeterMatrix(std::move(m)));
  TwistedAutomorphism flip;
  flip.image.resize(rank);
  for (int i = 0; i < rank; ++i) flip.image[i] = rank - 1 - i;

  const IntPolynomial iota = poincare_iota(sys, flip);
  return by_wt == iota && iota.palindromic();
}

}  // namespace coxiota
