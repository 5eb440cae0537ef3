#ifndef COXIOTA_POSET_HPP
#define COXIOTA_POSET_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxiota/twisted.hpp"

namespace coxiota {

/// Text form of a generator-index word: 1-based digits ("2312") for rank at
/// most 9, space-separated 1-based indices otherwise. Empty words print "e".
std::string index_word_string(std::span<const int> word, int rank);
/// Inverse of index_word_string; accepts "e" and "" for the empty word.
std::vector<int> parse_index_word(const std::string& text, int rank);

struct PosetNode {
  std::string sexpr;  // canonical S-underline expression, "" for the minimum
  std::string word;   // reduced word in W, "" for the identity
  int rank = 0;
  std::int64_t length = 0;
};

/// A finite ranked poset with dense order relation and its Hasse diagram.
/// Node ids are assigned in (rank, label) order by the builders.
class RankedPoset {
 public:
  /// Materializes `leq`, validates order axioms (exhaustively up to 200
  /// elements, by seeded sampling beyond), and computes the transitive
  /// reduction. Throws inconsistent_ranks when u < v with rank(u) >= rank(v).
  static RankedPoset build(std::vector<PosetNode> nodes,
                           const std::function<bool(int, int)>& leq,
                           std::optional<int> truncation_rank = std::nullopt);

  int size() const { return static_cast<int>(nodes_.size()); }
  const PosetNode& node(int i) const { return nodes_[i]; }
  int rank(int i) const { return nodes_[i].rank; }
  bool leq(int u, int v) const {
    return leq_[static_cast<std::size_t>(u) * nodes_.size() + v] != 0;
  }
  const std::vector<int>& upper_covers(int i) const { return upper_[i]; }
  const std::vector<int>& lower_covers(int i) const { return lower_[i]; }
  std::optional<int> truncation_rank() const { return truncation_rank_; }

  /// The unique minimum; throws bad_input if it does not exist.
  int minimum() const;

 private:
  std::vector<PosetNode> nodes_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::vector<int>> upper_, lower_;
  std::optional<int> truncation_rank_;
};

struct GradednessReport {
  bool graded = true;
  // On failure: two saturated chains with shared endpoints and different
  // lengths, as node-id paths from the minimum.
  std::vector<int> chain_short, chain_long;
};

/// Graded iff every cover has rank difference one. The witness pairs the
/// greedy chain through the offending cover with the canonical chain of its
/// upper endpoint.
GradednessReport check_graded(const RankedPoset& p);

/// Moebius function of the interval [u,v]; throws not_comparable otherwise.
long long mobius(const RankedPoset& p, int u, int v);
/// Row mu(u, .) for all v; entries for incomparable pairs are 0.
std::vector<long long> mobius_row(const RankedPoset& p, int u);

std::vector<int> maximal_elements(const RankedPoset& p);

/// Three-valued directedness over a truncation: a pair is `bounded` when a
/// common upper bound exists among the listed elements, `unbounded` when the
/// poset is complete and none exists, `unknown` when the poset is a
/// truncation (a bound may exist beyond it).
struct DirectednessReport {
  std::int64_t bounded = 0;
  std::int64_t unbounded = 0;
  std::int64_t unknown = 0;
  std::optional<std::pair<int, int>> unbounded_witness;
  std::optional<std::pair<int, int>> unknown_witness;
};
DirectednessReport directedness_within(const RankedPoset& p, bool complete);

std::string export_dot(const RankedPoset& p);
std::string export_json(const RankedPoset& p);
/// Rebuilds a poset from export_json output (covers closed transitively).
RankedPoset parse_poset_json(const std::string& text);

/// A Bruhat subposet together with the mapping back into the enumeration.
struct BruhatPoset {
  RankedPoset poset;
  std::vector<int> enum_index;  // poset id -> TwistedEnumeration index
};

BruhatPoset make_iota_poset(const TwistedEnumeration& ten,
                            const TwistedLeqTable& table);
BruhatPoset make_involution_poset(const TwistedEnumeration& ten,
                                  const TwistedLeqTable& table);

/// Upper bound c^{2k} for u and v from a Coxeter element c = w_{S1} w_{S3}
/// w_{S2}, where theta(S1) = S2, S3 is pointwise fixed and each part
/// commutes internally. Requires an infinite group; throws no_partition on
/// an invalid partition and k_budget when k_max is exhausted.
TwistedElement coxeter_power_upper_bound(
    const CoxeterSystem& sys, const TwistedAutomorphism& theta,
    const TwistedElement& u, const TwistedElement& v, const std::vector<int>& s1,
    const std::vector<int>& s2, const std::vector<int>& s3, int k_max = 16);

}  // namespace coxiota

#endif  // COXIOTA_POSET_HPP
