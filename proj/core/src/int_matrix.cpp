#include "coxiota/int_matrix.hpp"

namespace coxiota {

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  IntMatrix out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      mpz_class& acc = out.at(i, j);
      for (int k = 0; k < n_; ++k) {
        // acc += a(i,k) * b(k,j), without temporaries
        mpz_addmul(acc.get_mpz_t(), at(i, k).get_mpz_t(),
                   rhs.at(k, j).get_mpz_t());
      }
    }
  }
  return out;
}

bool IntMatrix::operator<(const IntMatrix& rhs) const {
  if (n_ != rhs.n_) return n_ < rhs.n_;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    int c = cmp(a_[i], rhs.a_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::size_t IntMatrix::hash() const {
  // FNV-1a over limbs; sign folded in per entry.
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::size_t>(n_));
  for (const mpz_class& z : a_) {
    const mpz_srcptr p = z.get_mpz_t();
    int sgn = mpz_sgn(p);
    mix(static_cast<std::size_t>(sgn + 1));
    if (sgn != 0) {
      std::size_t limbs = mpz_size(p);
      for (std::size_t l = 0; l < limbs; ++l) {
        mix(static_cast<std::size_t>(mpz_getlimbn(p, l)));
      }
    }
  }
  return h;
}

}  // namespace coxiota
