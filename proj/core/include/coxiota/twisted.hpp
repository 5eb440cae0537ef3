#ifndef COXIOTA_TWISTED_HPP
#define COXIOTA_TWISTED_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coxiota/coxeter.hpp"

namespace coxiota {

/// A diagram automorphism given by its action on generator indices.
/// Operations assume (and check_automorphism verifies) that it is an
/// involutive permutation preserving the Coxeter matrix.
struct TwistedAutomorphism {
  std::vector<int> image;

  static TwistedAutomorphism identity(int rank) {
    TwistedAutomorphism t;
    t.image.resize(rank);
    for (int i = 0; i < rank; ++i) t.image[i] = i;
    return t;
  }

  int operator()(int s) const { return image[s]; }
  int rank() const { return static_cast<int>(image.size()); }
  bool is_identity() const {
    for (int i = 0; i < rank(); ++i)
      if (image[i] != i) return false;
    return true;
  }
  bool operator==(const TwistedAutomorphism&) const = default;
};

/// True iff theta is an involutive permutation of the right size that
/// preserves all bond orders.
bool check_automorphism(const CoxeterSystem& sys, const TwistedAutomorphism& theta);

/// theta applied to a group element (via any reduced word).
Element apply_theta(const CoxeterSystem& sys, const TwistedAutomorphism& theta,
                    const Element& w);

/// The underline action: w.s = ws when theta(s)ws = w, else theta(s)ws.
Element twisted_action(const CoxeterSystem& sys, const TwistedAutomorphism& theta,
                       const Element& w, int s);

/// Left-to-right fold of twisted_action starting from the identity.
Element eval_sexpr(const CoxeterSystem& sys, const TwistedAutomorphism& theta,
                   std::span<const int> expr);

bool is_twisted_involution(const CoxeterSystem& sys,
                           const TwistedAutomorphism& theta, const Element& w);

/// A twisted involution with its rank data and canonical reduced
/// S-underline expression (smallest-descent stripping).
struct TwistedElement {
  Element element;
  std::int64_t rho = 0;
  std::int64_t ell = 0;
  std::int64_t ell_theta = 0;
  std::vector<int> sexpr;
};

/// Wraps a twisted involution, computing rho by the greedy descent walk.
/// Throws not_twisted_involution otherwise.
TwistedElement make_twisted(const CoxeterSystem& sys,
                            const TwistedAutomorphism& theta, const Element& w);

std::int64_t rho_of(const CoxeterSystem& sys, const TwistedAutomorphism& theta,
                    const Element& w);
std::int64_t ell_theta_of(const CoxeterSystem& sys,
                          const TwistedAutomorphism& theta, const Element& w);
bool is_twisted_identity(const CoxeterSystem& sys,
                         const TwistedAutomorphism& theta, const Element& w);

/// theta(w^{-1}) w, wrapped as a twisted element.
TwistedElement iota_from_group_element(const CoxeterSystem& sys,
                                       const TwistedAutomorphism& theta,
                                       const Element& w);

/// Bruhat order on twisted involutions via the lifting recursion; always
/// picks the smallest-index descent of v.
bool bruhat_leq_twisted(const CoxeterSystem& sys, const TwistedAutomorphism& theta,
                        const TwistedElement& u, const TwistedElement& v);

/// Brute-force subword oracle: true iff some subsequence of v_expr evaluates
/// to u under the underline action. Guarded at 20 letters.
bool subword_check_bruteforce(const CoxeterSystem& sys,
                              const TwistedAutomorphism& theta, const Element& u,
                              std::span<const int> v_expr);

/// All reduced S-underline expressions of a twisted involution. Guarded by a
/// result-count cap; intended for small oracle checks.
std::vector<std::vector<int>> all_reduced_sexprs(const CoxeterSystem& sys,
                                                 const TwistedAutomorphism& theta,
                                                 const TwistedElement& w,
                                                 std::int64_t max_results = 100000);

/// NOF: m(s, theta(s)) is even or infinite whenever s != theta(s).
bool has_nof(const CoxeterSystem& sys, const TwistedAutomorphism& theta);

/// Canonical Coxeter generators of Fix(theta): longest elements of the
/// parabolics {s, theta(s)} with finite bond. Pairs with infinite bond
/// contribute no generator; *had_infinite_pair reports whether any were
/// skipped.
std::vector<Element> fixed_subgroup_generators(const CoxeterSystem& sys,
                                               const TwistedAutomorphism& theta,
                                               bool* had_infinite_pair = nullptr);

/// Rank-layered BFS of the twisted involutions from e under the underline
/// action. Layer r holds exactly the elements of rank r, sorted by canonical
/// S-underline expression. The result is an order ideal of Br(J(theta)).
class TwistedEnumeration {
 public:
  static constexpr int kOutside = -1;

  /// max_rank == nullopt enumerates all of J(theta) and requires a
  /// recognized finite type.
  static TwistedEnumeration run(const CoxeterSystem& sys,
                                const TwistedAutomorphism& theta,
                                std::optional<int> max_rank,
                                const Budget& budget = {});

  int size() const { return static_cast<int>(elems_.size()); }
  const TwistedElement& at(int i) const { return elems_[i]; }
  const CoxeterSystem& system() const { return sys_; }
  const TwistedAutomorphism& theta() const { return theta_; }

  std::optional<int> index_of(const Element& e) const;
  bool in_iota(int i) const { return elems_[i].ell_theta == 0; }
  const std::vector<int>& iota_indices() const { return iota_indices_; }

  /// Index of at(i) underline-s, or kOutside beyond the truncation.
  int action(int i, int s) const { return action_[static_cast<std::size_t>(i) * n_gen_ + s]; }
  bool descent(int i, int s) const { return (descent_mask_[i] >> s) & 1u; }
  int first_descent(int i) const;

  bool complete() const { return complete_; }
  int max_rank() const { return max_rank_; }
  std::optional<int> truncation_rank() const {
    return complete_ ? std::nullopt : std::optional<int>(max_rank_);
  }

 private:
  TwistedEnumeration(CoxeterSystem sys, TwistedAutomorphism theta)
      : sys_(std::move(sys)), theta_(std::move(theta)), n_gen_(sys_.rank()) {}

  CoxeterSystem sys_;  // owned copy: enumerations outlive their inputs
  TwistedAutomorphism theta_;
  int n_gen_ = 0;
  std::vector<TwistedElement> elems_;
  std::vector<std::uint32_t> descent_mask_;
  std::vector<int> action_;
  std::vector<int> iota_indices_;
  std::unordered_multimap<std::size_t, int> by_hash_;
  bool complete_ = false;
  int max_rank_ = 0;
};

/// Dense Bruhat comparison table over an enumerated truncation, filled by
/// rank-increasing dynamic programming on the lifting recursion.
class TwistedLeqTable {
 public:
  bool leq(int u, int v) const { return t_[static_cast<std::size_t>(v) * n_ + u] != 0; }
  int size() const { return n_; }

 private:
  friend TwistedLeqTable compute_leq_table(const TwistedEnumeration&);
  int n_ = 0;
  std::vector<std::uint8_t> t_;
};

TwistedLeqTable compute_leq_table(const TwistedEnumeration& ten);

/// Full interval test: [u,v] meets no twisted involution outside iota.
bool is_full(const TwistedEnumeration& ten, const TwistedLeqTable& table, int u,
             int v);

/// The W x W system with all cross bonds 2, and the swap automorphism.
std::pair<CoxeterSystem, TwistedAutomorphism> square_with_swap(
    const CoxeterSystem& inner);

/// Block-diagonal embedding of (v, w) into the square system.
Element square_embed(const CoxeterSystem& square, const CoxeterSystem& inner,
                     const Element& v, const Element& w);

/// For theta equal to conjugation by the longest element: the set
/// {w0 u : u in iota(theta)} together with the verification that it is the
/// conjugacy class of w0.
struct DualConjugacyModel {
  std::vector<Element> elements;      // w0 * u, ordered by rho(u)
  bool matches_w0_class = false;
  std::size_t class_size = 0;
};
DualConjugacyModel dual_conjugacy_model(const CoxeterSystem& sys,
                                        const TwistedAutomorphism& theta,
                                        const Budget& budget = {});

}  // namespace coxiota

#endif  // COXIOTA_TWISTED_HPP
