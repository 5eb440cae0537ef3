#ifndef COXIOTA_TOPOLOGY_HPP
#define COXIOTA_TOPOLOGY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "coxiota/poset.hpp"

namespace coxiota {

/// Order complex of an open poset interval: vertices are the elements
/// strictly between the endpoints, simplices are the chains.
struct OrderComplex {
  std::vector<int> vertex_ids;  // complex vertex -> poset node id, ascending
  // simplices[d]: the d-dimensional chains as sorted local vertex lists
  std::vector<std::vector<std::vector<int>>> simplices;

  int dimension() const { return static_cast<int>(simplices.size()) - 1; }
  std::int64_t num_simplices() const;
};

/// Chains of the open interval (u,v); the empty complex when v covers u.
/// Throws not_comparable unless u < v, chain_budget past max_chains.
OrderComplex order_complex(const RankedPoset& p, int u, int v,
                           std::int64_t max_chains = 2'000'000);

struct DenseIntMat {
  int rows = 0, cols = 0;
  std::vector<mpz_class> a;

  DenseIntMat() = default;
  DenseIntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  mpz_class& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const mpz_class& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
};

/// Invariant factors d1 | d2 | ... | dr of an integer matrix, r = rank.
/// Exact elimination with minimal-absolute-value pivoting.
std::vector<mpz_class> smith_invariant_factors(DenseIntMat m);

/// Reduced (augmented) simplicial chain complex: boundary[d] maps C_d to
/// C_{d-1}, where C_{-1} is spanned by the empty simplex.
struct ChainComplex {
  std::vector<DenseIntMat> boundary;  // boundary[d], d = 0..dim
  std::vector<std::int64_t> free_rank;  // #C_d for d = -1..dim (offset by 1)

  int dimension() const { return static_cast<int>(boundary.size()) - 1; }
};

ChainComplex chain_complex(const OrderComplex& oc);

struct HomologyGroup {
  std::int64_t betti = 0;
  std::vector<mpz_class> torsion;
  bool trivial() const { return betti == 0 && torsion.empty(); }
};

/// groups[k] is reduced H_{k-1}; index 0 holds dimension -1.
struct HomologyResult {
  std::vector<HomologyGroup> groups;

  int top_dimension() const { return static_cast<int>(groups.size()) - 2; }
  const HomologyGroup& at(int dim) const { return groups[dim + 1]; }
  bool all_trivial() const;
  /// Reduced Euler characteristic: sum of (-1)^d betti_d.
  long long reduced_euler() const;
};

/// Verifies boundary-of-boundary vanishes (not_a_complex otherwise) and
/// computes all reduced homology groups via Smith normal form.
HomologyResult reduced_homology(const ChainComplex& c);

enum class IntervalClass { sphere, acyclic, other };

struct IntervalHomology {
  HomologyResult homology;
  IntervalClass cls = IntervalClass::other;
  int sphere_dim = 0;  // meaningful when cls == sphere
};

IntervalClass classify_homology(const HomologyResult& h, int* sphere_dim);

IntervalHomology interval_homology(const RankedPoset& p, int u, int v,
                                   std::int64_t max_chains = 2'000'000);

/// One line per dimension ("H~{d} = Z^{b} + Z/{t} + ...") followed by the
/// classification line SPHERE(d) | ACYCLIC | OTHER.
std::string homology_report_text(const IntervalHomology& ih);

/// A matching on the face poset of an order complex (empty cell included).
struct MorseMatching {
  std::vector<int> interval_vertices;   // enumeration indices, ascending rank
  std::vector<std::vector<int>> cells;  // cell id -> sorted local vertex list;
                                        // cell 0 is the empty cell
  std::vector<int> partner;             // -1 marks a critical cell
  std::vector<int> critical;

  int dim_of(int cell) const { return static_cast<int>(cells[cell].size()) - 1; }
  bool complete() const { return critical.empty(); }
};

/// Matching from the collapsibility construction: requires u.s = us (twisted
/// absolute length of us is 1) and s a descent of v. Complete and acyclic.
MorseMatching morse_matching_collapse(const TwistedEnumeration& ten,
                                      const TwistedLeqTable& table, int u, int v,
                                      int s, std::int64_t max_chains = 2'000'000);

/// Suspension construction: requires u.s = theta(s)us with s a descent of v
/// but not of u, and u.s strictly below v. Critical cells are the chains
/// through u.s (an order filter).
MorseMatching morse_matching_suspend(const TwistedEnumeration& ten,
                                     const TwistedLeqTable& table, int u, int v,
                                     int s, std::int64_t max_chains = 2'000'000);

/// Case-I construction: as in the suspension but additionally [u, v.s] must
/// not be full; critical cells are the chains through v.s.
MorseMatching morse_matching_case1(const TwistedEnumeration& ten,
                                   const TwistedLeqTable& table, int u, int v,
                                   int s, std::int64_t max_chains = 2'000'000);

/// Directs matched Hasse edges of the face poset upwards, the rest
/// downwards, and tests the digraph for acyclicity.
bool verify_acyclic(const MorseMatching& m);

}  // namespace coxiota

#endif  // COXIOTA_TOPOLOGY_HPP
