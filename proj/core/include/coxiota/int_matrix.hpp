#ifndef COXIOTA_INT_MATRIX_HPP
#define COXIOTA_INT_MATRIX_HPP

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace coxiota {

/// Dense square matrix over arbitrary-precision integers. Entries of group
/// elements in infinite Coxeter groups grow without bound, so fixed-width
/// integers are not an option here.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int size() const { return n_; }

  mpz_class& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const mpz_class& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  IntMatrix operator*(const IntMatrix& rhs) const;

  bool operator==(const IntMatrix& rhs) const {
    return n_ == rhs.n_ && a_ == rhs.a_;
  }
  bool operator!=(const IntMatrix& rhs) const { return !(*this == rhs); }

  /// Lexicographic entry order; used only for canonical sorting.
  bool operator<(const IntMatrix& rhs) const;

  std::size_t hash() const;

 private:
  int n_ = 0;
  std::vector<mpz_class> a_;
};

}  // namespace coxiota

#endif  // COXIOTA_INT_MATRIX_HPP
