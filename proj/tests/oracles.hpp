// Test-only oracles, independent of the implementation paths they check:
// a permutation model for symmetric groups, literal-definition Bruhat
// comparison, and exhaustive word searches.

#ifndef COXIOTA_TESTS_ORACLES_HPP
#define COXIOTA_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "coxiota/coxeter.hpp"
#include "coxiota/twisted.hpp"

namespace testutil {

using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// (a * b)(i) = a(b(i)), matching the product convention of the matrix model.
inline Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Perm perm_inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<int>(i);
  return c;
}

inline Perm perm_transposition(int n, int i) {  // s_i = (i, i+1)
  Perm p = perm_identity(n);
  std::swap(p[i], p[i + 1]);
  return p;
}

inline Perm perm_reversal(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
  return p;
}

inline int perm_inversions(const Perm& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv;
}

inline Perm perm_of_word(int n, const std::vector<int>& word) {
  Perm p = perm_identity(n);
  for (int s : word) p = perm_compose(p, perm_transposition(n, s));
  return p;
}

inline std::vector<Perm> all_perms(int n) {
  Perm p = perm_identity(n);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// All fixed-point-free involutions of S_{2n}, by recursive pairing.
inline std::vector<Perm> fpf_involutions(int n) {
  const int size = 2 * n;
  std::vector<Perm> out;
  Perm p(size, -1);
  auto rec = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < size; ++i)
      if (p[i] == -1) {
        first = i;
        break;
      }
    if (first == -1) {
      out.push_back(p);
      return;
    }
    for (int j = first + 1; j < size; ++j) {
      if (p[j] != -1) continue;
      p[first] = j;
      p[j] = first;
      self(self);
      p[first] = -1;
      p[j] = -1;
    }
  };
  rec(rec);
  return out;
}

// All reduced words of w, by recursion over right descents.
inline std::vector<std::vector<int>> all_reduced_words(
    const coxiota::CoxeterSystem& sys, const coxiota::Element& w) {
  std::vector<std::vector<int>> out;
  std::vector<int> suffix;
  auto rec = [&](auto&& self, const coxiota::Element& cur) -> void {
    if (sys.length(cur) == 0) {
      out.emplace_back(suffix.rbegin(), suffix.rend());
      return;
    }
    for (int s = 0; s < sys.rank(); ++s) {
      if (!sys.is_right_descent(cur, s)) continue;
      suffix.push_back(s);
      self(self, sys.multiply_gen(cur, s));
      suffix.pop_back();
    }
  };
  rec(rec, w);
  return out;
}

// Some subsequence of `word` multiplies to `target` (bitmask brute force).
inline bool subsequence_evaluates(const coxiota::CoxeterSystem& sys,
                                  const std::vector<int>& word,
                                  const coxiota::Element& target) {
  const int k = static_cast<int>(word.size());
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    coxiota::Element w = sys.identity();
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) w = sys.multiply_gen(w, word[i]);
    if (w == target) return true;
  }
  return false;
}

// The literal subword definition of Bruhat order: u <= v iff every reduced
// expression of v contains a subsequence multiplying to u.
inline bool def21_bruhat_leq(const coxiota::CoxeterSystem& sys,
                             const coxiota::Element& u,
                             const coxiota::Element& v) {
  for (const std::vector<int>& word : all_reduced_words(sys, v))
    if (!subsequence_evaluates(sys, word, u)) return false;
  return true;
}

// Twisted analogue over reduced S-underline expressions (the subword
// property is quantified over every reduced expression).
inline bool subword_sexpr_bruteforce(const coxiota::CoxeterSystem& sys,
                                     const coxiota::TwistedAutomorphism& theta,
                                     const std::vector<int>& sexpr,
                                     const coxiota::Element& target) {
  const int k = static_cast<int>(sexpr.size());
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    coxiota::Element w = sys.identity();
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) w = coxiota::twisted_action(sys, theta, w, sexpr[i]);
    if (w == target) return true;
  }
  return false;
}

}  // namespace testutil

#endif  // COXIOTA_TESTS_ORACLES_HPP
