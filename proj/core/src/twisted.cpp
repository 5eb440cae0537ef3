#include "coxiota/twisted.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace coxiota {

bool check_automorphism(const CoxeterSystem& sys, const TwistedAutomorphism& theta) {
  const int n = sys.rank();
  if (theta.rank() != n) return false;
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    const int im = theta.image[i];
    if (im < 0 || im >= n || hit[im]) return false;
    hit[im] = true;
  }
  for (int i = 0; i < n; ++i)
    if (theta(theta(i)) != i) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sys.coxeter_matrix().bond(theta(i), theta(j)) !=
          sys.coxeter_matrix().bond(i, j))
        return false;
  return true;
}

Element apply_theta(const CoxeterSystem& sys, const TwistedAutomorphism& theta,
                    const Element& w) {
  if (theta.is_identity()) return w;
  return sys.apply_diagram_perm(theta.image, w);
}

Element twisted_action(const CoxeterSystem& sys, const TwistedAutomorphism& theta,
                       const Element& w, int s) {
  Element ws = sys.multiply_gen(w, s);
  Element tws = sys.gen_multiply(theta(s), ws);
  if (tws == w) return ws;
  return tws;
}

Element eval_sexpr(const CoxeterSystem& sys, const TwistedAutomorphism& theta,
                   std::span<const int> expr) {
  Element w = sys.identity();
  for (int s : expr) w = twisted_action(sys, theta, w, s);
  return w;
}

bool is_twisted_involution(const CoxeterSystem& sys,
                           const TwistedAutomorphism& theta, const Element& w) {
  return apply_theta(sys, theta, w) == sys.inverse(w);
}

TwistedElement make_twisted(const CoxeterSystem& sys,
                            const TwistedAutomorphism& theta, const Element& w) {
  if (!is_twisted_involution(sys, theta, w))
    fail(errc::not_twisted_involution, "element is not a twisted involution");
  TwistedElement t;
  t.element = w;
  t.ell = sys.length(w);

  // Greedy descent walk: on J(theta), rho(w.s) < rho(w) iff s in D_R(w).
  std::vector<int> strips;
  Element cur = w;
  for (int s = sys.first_right_descent(cur); s != -1;
       s = sys.first_right_descent(cur)) {
    strips.push_back(s);
    cur = twisted_action(sys, theta, cur, s);
  }
  t.rho = static_cast<std::int64_t>(strips.size());
  t.ell_theta = 2 * t.rho - t.ell;
  std::reverse(strips.begin(), strips.end());
  t.sexpr = std::move(strips);
  return t;
}

std::int64_t rho_of(const CoxeterSystem& sys, const TwistedAutomorphism& theta,
                    const Element& w) {
  return make_twisted(sys, theta, w).rho;
}

std::int64_t ell_theta_of(const CoxeterSystem& sys,
                          const TwistedAutomorphism& theta, const Element& w) {
  return make_twisted(sys, theta, w).ell_theta;
}

bool is_twisted_identity(const CoxeterSystem& sys,
                         const TwistedAutomorphism& theta, const Element& w) {
  if (!is_twisted_involution(sys, theta, w)) return false;
  return make_twisted(sys, theta, w).ell_theta == 0;
}

TwistedElement iota_from_group_element(const CoxeterSystem& sys,
                                       const TwistedAutomorphism& theta,
                                       const Element& w) {
  Element t = sys.multiply(apply_theta(sys, theta, sys.inverse(w)), w);
  return make_twisted(sys, theta, t);
}

bool bruhat_leq_twisted(const CoxeterSystem& sys, const TwistedAutomorphism& theta,
                        const TwistedElement& u, const TwistedElement& v) {
  std::int64_t ru = u.rho, rv = v.rho;
  Element uu = u.element, vv = v.element;
  while (true) {
    if (ru == 0) return true;
    if (ru > rv) return false;
    const int s = sys.first_right_descent(vv);
    if (sys.is_right_descent(uu, s)) {
      uu = twisted_action(sys, theta, uu, s);
      --ru;
    }
    vv = twisted_action(sys, theta, vv, s);
    --rv;
  }
}

bool subword_check_bruteforce(const CoxeterSystem& sys,
                              const TwistedAutomorphism& theta, const Element& u,
                              std::span<const int> v_expr) {
  if (v_expr.size() > 20)
    fail(errc::subword_budget, "subword oracle guarded at 20 letters");
  // Reachable products over all subsequences of every prefix, deduplicated.
  std::vector<Element> reach{sys.identity()};
  std::unordered_set<std::size_t> hashes;  // collision-checked against reach
  auto contains = [&](const Element& e) {
    if (hashes.find(e.hash()) == hashes.end()) return false;
    for (const Element& r : reach)
      if (r == e) return true;
    return false;
  };
  hashes.insert(reach.front().hash());
  for (int s : v_expr) {
    const std::size_t sz = reach.size();
    for (std::size_t i = 0; i < sz; ++i) {
      Element next = twisted_action(sys, theta, reach[i], s);
      if (!contains(next)) {
        hashes.insert(next.hash());
        reach.push_back(std::move(next));
      }
    }
  }
  return contains(u);
}

std::vector<std::vector<int>> all_reduced_sexprs(const CoxeterSystem& sys,
                                                 const TwistedAutomorphism& theta,
                                                 const TwistedElement& w,
                                                 std::int64_t max_results) {
  std::vector<std::vector<int>> out;
  std::vector<int> suffix;
  auto rec = [&](auto&& self, const Element& cur, std::int64_t rank) -> void {
    if (rank == 0) {
      std::vector<int> expr(suffix.rbegin(), suffix.rend());
      out.push_back(std::move(expr));
      if (static_cast<std::int64_t>(out.size()) > max_results)
        fail(errc::subword_budget, "too many reduced S-expressions");
      return;
    }
    for (int s = 0; s < sys.rank(); ++s) {
      if (!sys.is_right_descent(cur, s)) continue;
      suffix.push_back(s);
      self(self, twisted_action(sys, theta, cur, s), rank - 1);
      suffix.pop_back();
    }
  };
  rec(rec, w.element, w.rho);
  return out;
}

bool has_nof(const CoxeterSystem& sys, const TwistedAutomorphism& theta) {
  for (int s = 0; s < sys.rank(); ++s) {
    const int t = theta(s);
    if (t == s) continue;
    const int m = sys.coxeter_matrix().bond(s, t);
    if (CoxeterMatrix::finite_bond(m) && m % 2 == 1) return false;
  }
  return true;
}

std::vector<Element> fixed_subgroup_generators(const CoxeterSystem& sys,
                                               const TwistedAutomorphism& theta,
                                               bool* had_infinite_pair) {
  if (had_infinite_pair) *had_infinite_pair = false;
  std::vector<Element> gens;
  for (int s = 0; s < sys.rank(); ++s) {
    const int t = theta(s);
    if (t < s) continue;  // each pair once
    if (t == s) {
      gens.push_back(sys.generator(s));
      continue;
    }
    const int m = sys.coxeter_matrix().bond(s, t);
    if (!CoxeterMatrix::finite_bond(m)) {
      if (had_infinite_pair) *had_infinite_pair = true;
      continue;
    }
    gens.push_back(sys.longest_element({s, t}));
  }
  return gens;
}

// ---------------------------------------------------------------------------
// TwistedEnumeration

TwistedEnumeration TwistedEnumeration::run(const CoxeterSystem& sys,
                                           const TwistedAutomorphism& theta,
                                           std::optional<int> max_rank,
                                           const Budget& budget) {
  if (!max_rank.has_value() && !sys.is_finite())
    fail(errc::infinite_group,
         "full twisted enumeration requires a recognized finite type");
  if (sys.rank() > 31) fail(errc::bad_input, "rank > 31 not supported");

  TwistedEnumeration ten(sys, theta);

  auto try_insert = [&ten](TwistedElement&& te) -> bool {
    const std::size_t h = te.element.hash();
    auto [lo, hi] = ten.by_hash_.equal_range(h);
    for (auto it = lo; it != hi; ++it)
      if (ten.elems_[static_cast<std::size_t>(it->second)].element == te.element)
        return false;
    ten.by_hash_.emplace(h, static_cast<int>(ten.elems_.size()));
    ten.elems_.push_back(std::move(te));
    return true;
  };

  {
    TwistedElement e;
    e.element = sys.identity();
    try_insert(std::move(e));
  }

  int layer_begin = 0, layer_end = 1, rank = 0;
  ten.complete_ = false;
  while (layer_begin < layer_end) {
    if (max_rank && rank >= *max_rank) break;
    ++rank;
    std::vector<TwistedElement> next;
    for (int i = layer_begin; i < layer_end; ++i)
      for (int s = 0; s < sys.rank(); ++s) {
        // Ascending steps only: s not a descent means rho goes up.
        if (sys.is_right_descent(ten.elems_[i].element, s)) continue;
        Element x = twisted_action(sys, theta, ten.elems_[i].element, s);
        if (ten.index_of(x)) continue;
        bool fresh = true;
        for (const TwistedElement& q : next)
          if (q.element == x) {
            fresh = false;
            break;
          }
        if (!fresh) continue;
        TwistedElement te = make_twisted(sys, theta, x);
        // BFS layer and greedy-walk rank are two routes to rho
        if (te.rho != rank)
          fail(errc::not_twisted_involution,
               "internal: BFS layer disagrees with the descent-walk rank");
        next.push_back(std::move(te));
        if (static_cast<std::int64_t>(ten.elems_.size() + next.size()) >
            budget.max_elements)
          fail(errc::budget_exceeded, "twisted enumeration budget exceeded");
      }
    std::sort(next.begin(), next.end(),
              [](const TwistedElement& a, const TwistedElement& b) {
                return a.sexpr < b.sexpr;
              });
    for (TwistedElement& te : next) try_insert(std::move(te));
    layer_begin = layer_end;
    layer_end = static_cast<int>(ten.elems_.size());
    if (layer_end == layer_begin) {
      ten.complete_ = true;
      break;
    }
  }
  if (layer_begin >= layer_end) ten.complete_ = true;

  const int n = ten.size();
  ten.max_rank_ = n > 0 ? static_cast<int>(ten.elems_[n - 1].rho) : 0;

  // BFS layers must agree with the greedy-walk rank.
  for (const TwistedElement& te : ten.elems_)
    if (te.ell_theta < 0 || (te.ell + te.ell_theta) % 2 != 0)
      fail(errc::not_twisted_involution, "internal rank bookkeeping error");

  ten.descent_mask_.assign(n, 0);
  ten.action_.assign(static_cast<std::size_t>(n) * sys.rank(), kOutside);
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < sys.rank(); ++s) {
      if (sys.is_right_descent(ten.elems_[i].element, s))
        ten.descent_mask_[i] |= (1u << s);
      Element x = twisted_action(sys, theta, ten.elems_[i].element, s);
      if (auto idx = ten.index_of(x))
        ten.action_[static_cast<std::size_t>(i) * sys.rank() + s] = *idx;
    }
    if (ten.in_iota(i)) ten.iota_indices_.push_back(i);
  }
  return ten;
}

std::optional<int> TwistedEnumeration::index_of(const Element& e) const {
  auto [lo, hi] = by_hash_.equal_range(e.hash());
  for (auto it = lo; it != hi; ++it)
    if (elems_[static_cast<std::size_t>(it->second)].element == e) return it->second;
  return std::nullopt;
}

int TwistedEnumeration::first_descent(int i) const {
  const std::uint32_t mask = descent_mask_[i];
  if (mask == 0) return -1;
  return std::countr_zero(mask);
}

TwistedLeqTable compute_leq_table(const TwistedEnumeration& ten) {
  const int n = ten.size();
  if (static_cast<std::int64_t>(n) * n > (std::int64_t{1} << 31))
    fail(errc::budget_exceeded, "leq table too large");
  TwistedLeqTable table;
  table.n_ = n;
  table.t_.assign(static_cast<std::size_t>(n) * n, 0);
  // Elements are indexed in rank order, so row v only consults smaller rows.
  for (int v = 0; v < n; ++v) {
    std::uint8_t* row = table.t_.data() + static_cast<std::size_t>(v) * n;
    if (ten.at(v).rho == 0) {
      row[v] = 1;
      continue;
    }
    const int s = ten.first_descent(v);
    const int vp = ten.action(v, s);
    const std::uint8_t* prev = table.t_.data() + static_cast<std::size_t>(vp) * n;
    const std::int64_t rv = ten.at(v).rho;
    for (int u = 0; u < n; ++u) {
      if (ten.at(u).rho > rv) break;  // rank-sorted indices
      if (u == v) {
        row[u] = 1;
        continue;
      }
      const int up = ten.descent(u, s) ? ten.action(u, s) : u;
      row[u] = prev[up];
    }
  }
  return table;
}

bool is_full(const TwistedEnumeration& ten, const TwistedLeqTable& table, int u,
             int v) {
  if (!table.leq(u, v)) fail(errc::not_comparable, "is_full requires u <= v");
  for (int w = 0; w < ten.size(); ++w) {
    if (ten.in_iota(w)) continue;
    if (table.leq(u, w) && table.leq(w, v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Squares and the dual conjugacy model

std::pair<CoxeterSystem, TwistedAutomorphism> square_with_swap(
    const CoxeterSystem& inner) {
  const int n = inner.rank();
  std::vector<std::vector<int>> m(2 * n, std::vector<int>(2 * n, 2));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m[i][j] = inner.coxeter_matrix().bond(i, j);
      m[n + i][n + j] = inner.coxeter_matrix().bond(i, j);
    }
  TwistedAutomorphism swap;
  swap.image.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    swap.image[i] = n + i;
    swap.image[n + i] = i;
  }
  return {CoxeterSystem::build(CoxeterMatrix(std::move(m))), swap};
}

Element square_embed(const CoxeterSystem& square, const CoxeterSystem& inner,
                     const Element& v, const Element& w) {
  if (square.backend() != Backend::matrix || inner.backend() != Backend::matrix)
    fail(errc::backend_mismatch, "square embedding requires matrix backends");
  const int n = inner.rank();
  IntMatrix out = IntMatrix::identity(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.at(i, j) = v.matrix().at(i, j);
      out.at(n + i, n + j) = w.matrix().at(i, j);
    }
  return Element{std::move(out)};
}

DualConjugacyModel dual_conjugacy_model(const CoxeterSystem& sys,
                                        const TwistedAutomorphism& theta,
                                        const Budget& budget) {
  if (!sys.is_finite())
    fail(errc::infinite_group, "dual conjugacy model requires a finite group");
  std::vector<int> all(sys.rank());
  for (int i = 0; i < sys.rank(); ++i) all[i] = i;
  const Element w0 = sys.longest_element(all);
  for (int s = 0; s < sys.rank(); ++s) {
    // theta must be x -> w0 x w0
    Element expected = sys.multiply(sys.multiply(w0, sys.generator(s)), w0);
    if (apply_theta(sys, theta, sys.generator(s)) != expected)
      fail(errc::theta_not_conjugation_by_w0,
           "theta is not conjugation by the longest element");
  }

  DualConjugacyModel model;
  TwistedEnumeration ten = TwistedEnumeration::run(sys, theta, std::nullopt, budget);
  for (int i : ten.iota_indices())
    model.elements.push_back(sys.multiply(w0, ten.at(i).element));

  // Conjugacy class of w0 by closure under generator conjugation.
  std::vector<Element> cls{w0};
  std::unordered_multimap<std::size_t, std::size_t> seen;
  seen.emplace(w0.hash(), 0);
  auto known = [&](const Element& e) {
    auto [lo, hi] = seen.equal_range(e.hash());
    for (auto it = lo; it != hi; ++it)
      if (cls[it->second] == e) return true;
    return false;
  };
  for (std::size_t q = 0; q < cls.size(); ++q)
    for (int s = 0; s < sys.rank(); ++s) {
      Element y = sys.gen_multiply(s, sys.multiply_gen(cls[q], s));
      if (!known(y)) {
        seen.emplace(y.hash(), cls.size());
        cls.push_back(std::move(y));
      }
    }
  model.class_size = cls.size();
  model.matches_w0_class = cls.size() == model.elements.size();
  if (model.matches_w0_class) {
    for (const Element& e : model.elements)
      if (!known(e)) {
        model.matches_w0_class = false;
        break;
      }
  }
  return model;
}

}  // namespace coxiota
