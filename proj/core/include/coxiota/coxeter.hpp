#ifndef COXIOTA_COXETER_HPP
#define COXIOTA_COXETER_HPP

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "coxiota/error.hpp"
#include "coxiota/int_matrix.hpp"

namespace coxiota {

/// Symmetric table of bond orders m(s,s'). The value 0 encodes an infinite
/// bond, matching the group-file JSON convention.
class CoxeterMatrix {
 public:
  static constexpr int kInfinite = 0;

  explicit CoxeterMatrix(std::vector<std::vector<int>> entries);

  int rank() const { return static_cast<int>(entries_.size()); }
  int bond(int i, int j) const { return entries_[i][j]; }
  static bool finite_bond(int m) { return m != kInfinite; }

  /// True iff every off-diagonal entry lies in {2,3,4,6,infinity}.
  bool crystallographic() const;

  /// Restriction to a generator subset (indices must be distinct, in range).
  CoxeterMatrix restrict(const std::vector<int>& subset) const;

  bool operator==(const CoxeterMatrix&) const = default;

 private:
  std::vector<std::vector<int>> entries_;
};

struct FiniteType {
  std::string label;  // e.g. "A5", "B3", "I2(7)", "A1xA2"
  mpz_class order;
};

/// Classification of connected positive-definite diagrams, extended to
/// products component-wise. Returns nullopt for infinite groups.
std::optional<FiniteType> recognize_finite_type(const CoxeterMatrix& m);

enum class Backend { matrix, dihedral };

/// Normal form for rank-2 non-crystallographic groups: the alternating word
/// of length `len` starting with generator `first`. Canonical form uses
/// first = 0 for the identity and for the longest element (where both
/// alternating words of length m coincide).
struct DihedralWord {
  std::int64_t len = 0;
  int first = 0;
  bool operator==(const DihedralWord&) const = default;
};

/// A group element. Payload is either the exact matrix of the reflection
/// representation or a dihedral normal form. Equality is payload equality.
class Element {
 public:
  Element() : payload_(IntMatrix()) {}
  explicit Element(IntMatrix m) : payload_(std::move(m)) {}
  Element(std::int64_t len, int first) : payload_(DihedralWord{len, first}) {}

  Element(const Element& o) : payload_(o.payload_) {
    cached_length_.store(o.cached_length_.load(std::memory_order_relaxed),
                         std::memory_order_relaxed);
  }
  Element(Element&& o) noexcept : payload_(std::move(o.payload_)) {
    cached_length_.store(o.cached_length_.load(std::memory_order_relaxed),
                         std::memory_order_relaxed);
  }
  Element& operator=(const Element& o) {
    payload_ = o.payload_;
    cached_length_.store(o.cached_length_.load(std::memory_order_relaxed),
                         std::memory_order_relaxed);
    return *this;
  }
  Element& operator=(Element&& o) noexcept {
    payload_ = std::move(o.payload_);
    cached_length_.store(o.cached_length_.load(std::memory_order_relaxed),
                         std::memory_order_relaxed);
    return *this;
  }

  bool is_matrix() const { return std::holds_alternative<IntMatrix>(payload_); }
  const IntMatrix& matrix() const { return std::get<IntMatrix>(payload_); }
  const DihedralWord& dihedral() const { return std::get<DihedralWord>(payload_); }

  bool operator==(const Element& o) const { return payload_ == o.payload_; }
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const;

  std::size_t hash() const;

  // Idempotent length cache; racing writers store the same value.
  std::int64_t cached_length() const {
    return cached_length_.load(std::memory_order_relaxed);
  }
  void cache_length(std::int64_t l) const {
    cached_length_.store(l, std::memory_order_relaxed);
  }

 private:
  std::variant<IntMatrix, DihedralWord> payload_;
  mutable std::atomic<std::int64_t> cached_length_{-1};
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

using ReducedWord = std::vector<int>;  // 0-based generator indices

struct Budget {
  std::int64_t max_elements = 1'000'000;
};

class CoxeterSystem;

/// Result of a breadth-first group enumeration, grouped by Coxeter length.
class Enumeration {
 public:
  std::int64_t size() const { return static_cast<std::int64_t>(elements_.size()); }
  int num_layers() const { return static_cast<int>(layer_offsets_.size()) - 1; }
  std::span<const Element> layer(int l) const {
    return {elements_.data() + layer_offsets_[l],
            elements_.data() + layer_offsets_[l + 1]};
  }
  const Element& at(std::int64_t i) const { return elements_[i]; }
  std::int64_t length_of(std::int64_t i) const;
  std::optional<std::int64_t> index_of(const Element& e) const;
  /// True when the closure was exhausted (the whole group was listed).
  bool complete() const { return complete_; }

 private:
  friend class CoxeterSystem;
  std::vector<Element> elements_;
  std::vector<std::int64_t> layer_offsets_;  // num_layers()+1 entries
  std::unordered_multimap<std::size_t, std::int64_t> by_hash_;
  bool complete_ = false;
};

/// A Coxeter system over exact integer arithmetic. Immutable after
/// construction; all member operations are pure and safe to call
/// concurrently.
class CoxeterSystem {
 public:
  /// Chooses the backend: dihedral iff rank == 2 with a finite bond outside
  /// {2,3,4,6}; otherwise the integral reflection representation, which
  /// requires every bond to lie in {2,3,4,6,infinity}.
  static CoxeterSystem build(CoxeterMatrix m);

  const CoxeterMatrix& coxeter_matrix() const { return matrix_; }
  int rank() const { return matrix_.rank(); }
  Backend backend() const { return backend_; }
  const std::optional<FiniteType>& finite_type() const { return finite_type_; }
  bool is_finite() const { return finite_type_.has_value(); }

  /// Cartan companion entry a(i,j); bonds 2,3,4,6,infinity map to the
  /// off-diagonal pairs (0,0),(-1,-1),(-1,-2),(-1,-3),(-2,-2).
  int cartan(int i, int j) const { return cartan_[i][j]; }
  const IntMatrix& generator_matrix(int s) const { return gens_[s]; }

  Element identity() const;
  Element generator(int s) const;

  Element multiply(const Element& w, const Element& v) const;
  Element multiply_gen(const Element& w, int s) const;  // w * s
  Element gen_multiply(int s, const Element& w) const;  // s * w
  Element inverse(const Element& w) const;

  bool is_right_descent(const Element& w, int s) const;
  /// Smallest-index right descent, or -1 for the identity.
  int first_right_descent(const Element& w) const;

  std::int64_t length(const Element& w) const;
  ReducedWord reduced_word(const Element& w) const;
  Element eval_word(std::span<const int> word) const;

  /// Bruhat order via the lifting recursion on right descents.
  bool bruhat_leq(const Element& u, const Element& v) const;

  /// Longest element of the standard parabolic W_J, by greedy ascent.
  Element longest_element(const std::vector<int>& J) const;

  /// Image of w under the diagram automorphism s_i -> s_{perm[i]}.
  Element apply_diagram_perm(const std::vector<int>& perm, const Element& w) const;

  /// BFS closure under right multiplication. max_length == nullopt means the
  /// whole group and requires a recognized finite type.
  Enumeration enumerate(std::optional<std::int64_t> max_length,
                        const Budget& budget = {}) const;

  /// Partition of S into classes joined by odd-labelled edges; two
  /// generators are conjugate iff they share a class.
  std::vector<std::vector<int>> generator_conjugacy_classes() const;

  /// Minimal k with w a product of k reflections; finite groups only.
  std::int64_t absolute_length(const Element& w) const;

 private:
  explicit CoxeterSystem(CoxeterMatrix m);

  void check_element(const Element& w) const;

  CoxeterMatrix matrix_;
  Backend backend_ = Backend::matrix;
  std::vector<std::vector<int>> cartan_;  // matrix backend only
  std::vector<IntMatrix> gens_;
  std::optional<FiniteType> finite_type_;
};

}  // namespace coxiota

#endif  // COXIOTA_COXETER_HPP
