#include "coxiota/topology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace coxiota {

std::int64_t OrderComplex::num_simplices() const {
  std::int64_t n = 0;
  for (const auto& layer : simplices) n += static_cast<std::int64_t>(layer.size());
  return n;
}

OrderComplex order_complex(const RankedPoset& p, int u, int v,
                           std::int64_t max_chains) {
  if (u == v || !p.leq(u, v))
    fail(errc::not_comparable, "order complex requires u < v");

  OrderComplex oc;
  for (int w = 0; w < p.size(); ++w)
    if (w != u && w != v && p.leq(u, w) && p.leq(w, v)) oc.vertex_ids.push_back(w);
  const int nv = static_cast<int>(oc.vertex_ids.size());

  // succ[i]: strictly greater interval vertices; extending a chain past its
  // top element preserves the chain property by transitivity.
  std::vector<std::vector<int>> succ(nv);
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      if (p.leq(oc.vertex_ids[i], oc.vertex_ids[j])) succ[i].push_back(j);

  std::int64_t count = 0;
  std::vector<int> cur;
  auto dfs = [&](auto&& self, int last) -> void {
    if (++count > max_chains)
      fail(errc::chain_budget, "chain budget exceeded in order complex");
    const int d = static_cast<int>(cur.size()) - 1;
    if (d >= static_cast<int>(oc.simplices.size())) oc.simplices.resize(d + 1);
    oc.simplices[d].push_back(cur);
    for (int next : succ[last]) {
      cur.push_back(next);
      self(self, next);
      cur.pop_back();
    }
  };
  for (int i = 0; i < nv; ++i) {
    cur.assign(1, i);
    dfs(dfs, i);
  }
  return oc;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

int abs_cmp(const mpz_class& a, const mpz_class& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

std::vector<mpz_class> smith_invariant_factors(DenseIntMat m) {
  const int R = m.rows, C = m.cols;
  auto swap_rows = [&m, C](int a, int b) {
    if (a == b) return;
    for (int j = 0; j < C; ++j) std::swap(m.at(a, j), m.at(b, j));
  };
  auto swap_cols = [&m, R](int a, int b) {
    if (a == b) return;
    for (int i = 0; i < R; ++i) std::swap(m.at(i, a), m.at(i, b));
  };

  std::vector<mpz_class> diag;
  for (int t = 0; t < R && t < C; ++t) {
    // Pivot on a minimal-magnitude nonzero entry; this is what keeps
    // intermediate entries from exploding.
    int pi = -1, pj = -1;
    for (int i = t; i < R; ++i)
      for (int j = t; j < C; ++j) {
        if (sgn(m.at(i, j)) == 0) continue;
        if (pi == -1 || abs_cmp(m.at(i, j), m.at(pi, pj)) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi == -1) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool settled = false;
    while (!settled) {
      settled = true;
      for (int i = t + 1; i < R; ++i) {
        if (sgn(m.at(i, t)) == 0) continue;
        mpz_class q = m.at(i, t) / m.at(t, t);
        if (sgn(q) != 0)
          for (int j = t; j < C; ++j)
            mpz_submul(m.at(i, j).get_mpz_t(), q.get_mpz_t(), m.at(t, j).get_mpz_t());
        if (sgn(m.at(i, t)) != 0) {  // remainder strictly smaller: re-pivot
          swap_rows(t, i);
          settled = false;
        }
      }
      for (int j = t + 1; j < C; ++j) {
        if (sgn(m.at(t, j)) == 0) continue;
        mpz_class q = m.at(t, j) / m.at(t, t);
        if (sgn(q) != 0)
          for (int i = t; i < R; ++i)
            mpz_submul(m.at(i, j).get_mpz_t(), q.get_mpz_t(), m.at(i, t).get_mpz_t());
        if (sgn(m.at(t, j)) != 0) {
          swap_cols(t, j);
          settled = false;
        }
      }
    }
    diag.push_back(abs(m.at(t, t)));
  }

  // A diagonal matrix's invariant factors follow from pairwise gcd/lcm
  // replacements, repeated to a fixed point.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < diag.size(); ++i)
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        if (diag[j] % diag[i] == 0) continue;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
        mpz_class l = diag[i] / g * diag[j];
        diag[i] = g;
        diag[j] = l;
        changed = true;
      }
  }
  return diag;
}

// ---------------------------------------------------------------------------
// Chain complexes and homology

ChainComplex chain_complex(const OrderComplex& oc) {
  ChainComplex cc;
  const int dim = oc.dimension();
  cc.free_rank.assign(static_cast<std::size_t>(dim) + 2, 0);
  cc.free_rank[0] = 1;  // the empty simplex
  for (int d = 0; d <= dim; ++d)
    cc.free_rank[d + 1] = static_cast<std::int64_t>(oc.simplices[d].size());

  std::vector<std::map<std::vector<int>, int>> index(dim + 1);
  for (int d = 0; d <= dim; ++d)
    for (std::size_t i = 0; i < oc.simplices[d].size(); ++i)
      index[d][oc.simplices[d][i]] = static_cast<int>(i);

  for (int d = 0; d <= dim; ++d) {
    DenseIntMat b(static_cast<int>(cc.free_rank[d]),
                  static_cast<int>(cc.free_rank[d + 1]));
    for (std::size_t col = 0; col < oc.simplices[d].size(); ++col) {
      const std::vector<int>& simplex = oc.simplices[d][col];
      if (d == 0) {
        b.at(0, static_cast<int>(col)) = 1;  // augmentation
        continue;
      }
      std::vector<int> face(simplex.size() - 1);
      for (std::size_t k = 0; k < simplex.size(); ++k) {
        std::size_t idx = 0;
        for (std::size_t q = 0; q < simplex.size(); ++q)
          if (q != k) face[idx++] = simplex[q];
        const int row = index[d - 1].at(face);
        b.at(row, static_cast<int>(col)) = (k % 2 == 0) ? 1 : -1;
      }
    }
    cc.boundary.push_back(std::move(b));
  }
  return cc;
}

bool HomologyResult::all_trivial() const {
  for (const HomologyGroup& g : groups)
    if (!g.trivial()) return false;
  return true;
}

long long HomologyResult::reduced_euler() const {
  long long chi = 0;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const int d = static_cast<int>(k) - 1;
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(groups[k].betti);
  }
  return chi;
}

HomologyResult reduced_homology(const ChainComplex& c) {
  const int dim = c.dimension();
  for (int d = 1; d <= dim; ++d) {
    const DenseIntMat &a = c.boundary[d - 1], &b = c.boundary[d];
    for (int i = 0; i < a.rows; ++i)
      for (int j = 0; j < b.cols; ++j) {
        mpz_class acc;
        for (int k = 0; k < a.cols; ++k)
          mpz_addmul(acc.get_mpz_t(), a.at(i, k).get_mpz_t(),
                     b.at(k, j).get_mpz_t());
        if (sgn(acc) != 0)
          fail(errc::not_a_complex, "boundary of boundary is nonzero");
      }
  }

  std::vector<std::vector<mpz_class>> factors(dim + 2);
  for (int d = 0; d <= dim; ++d) factors[d] = smith_invariant_factors(c.boundary[d]);
  // factors[dim+1] stays empty: there is no boundary map above the top.

  HomologyResult h;
  h.groups.resize(static_cast<std::size_t>(dim) + 2);
  for (int d = -1; d <= dim; ++d) {
    const std::int64_t rank_d = (d >= 0) ? static_cast<std::int64_t>(factors[d].size()) : 0;
    const std::int64_t rank_up = static_cast<std::int64_t>(factors[d + 1].size());
    HomologyGroup& g = h.groups[d + 1];
    g.betti = c.free_rank[d + 1] - rank_d - rank_up;
    for (const mpz_class& f : factors[d + 1])
      if (f > 1) g.torsion.push_back(f);
  }
  return h;
}

IntervalClass classify_homology(const HomologyResult& h, int* sphere_dim) {
  int nonzero = 0, where = 0;
  bool torsion = false, multi = false;
  for (std::size_t k = 0; k < h.groups.size(); ++k) {
    const HomologyGroup& g = h.groups[k];
    if (!g.torsion.empty()) torsion = true;
    if (g.betti != 0) {
      ++nonzero;
      where = static_cast<int>(k) - 1;
      if (g.betti != 1) multi = true;
    }
  }
  if (torsion) return IntervalClass::other;
  if (nonzero == 0) return IntervalClass::acyclic;
  if (nonzero == 1 && !multi) {
    if (sphere_dim) *sphere_dim = where;
    return IntervalClass::sphere;
  }
  return IntervalClass::other;
}

IntervalHomology interval_homology(const RankedPoset& p, int u, int v,
                                   std::int64_t max_chains) {
  IntervalHomology ih;
  ih.homology = reduced_homology(chain_complex(order_complex(p, u, v, max_chains)));
  ih.cls = classify_homology(ih.homology, &ih.sphere_dim);
  return ih;
}

std::string homology_report_text(const IntervalHomology& ih) {
  std::ostringstream os;
  for (std::size_t k = 0; k < ih.homology.groups.size(); ++k) {
    const HomologyGroup& g = ih.homology.groups[k];
    os << "H~" << (static_cast<int>(k) - 1) << " = Z^" << g.betti;
    for (const mpz_class& t : g.torsion) os << " + Z/" << t;
    os << "\n";
  }
  switch (ih.cls) {
    case IntervalClass::sphere: os << "SPHERE(" << ih.sphere_dim << ")\n"; break;
    case IntervalClass::acyclic: os << "ACYCLIC\n"; break;
    case IntervalClass::other: os << "OTHER\n"; break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Morse matchings

namespace {

struct IntervalCells {
  std::vector<int> vertices;            // enumeration indices, rank-ascending
  std::vector<std::vector<int>> cells;  // cell 0 = empty cell
  std::map<std::vector<int>, int> cell_id;
};

IntervalCells interval_cells(const TwistedEnumeration& ten,
                             const TwistedLeqTable& table, int u, int v,
                             std::int64_t max_chains) {
  IntervalCells ic;
  for (int w : ten.iota_indices())
    if (w != u && w != v && table.leq(u, w) && table.leq(w, v))
      ic.vertices.push_back(w);
  const int nv = static_cast<int>(ic.vertices.size());

  std::vector<std::vector<int>> succ(nv);
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      if (table.leq(ic.vertices[i], ic.vertices[j])) succ[i].push_back(j);

  ic.cells.emplace_back();  // empty cell
  std::vector<std::vector<std::vector<int>>> by_dim;
  std::vector<int> cur;
  std::int64_t count = 0;
  auto dfs = [&](auto&& self, int last) -> void {
    if (++count > max_chains)
      fail(errc::chain_budget, "chain budget exceeded in face poset");
    const int d = static_cast<int>(cur.size()) - 1;
    if (d >= static_cast<int>(by_dim.size())) by_dim.resize(d + 1);
    by_dim[d].push_back(cur);
    for (int next : succ[last]) {
      cur.push_back(next);
      self(self, next);
      cur.pop_back();
    }
  };
  for (int i = 0; i < nv; ++i) {
    cur.assign(1, i);
    dfs(dfs, i);
  }
  for (const auto& layer : by_dim)
    for (const auto& cell : layer) ic.cells.push_back(cell);
  for (std::size_t id = 0; id < ic.cells.size(); ++id)
    ic.cell_id[ic.cells[id]] = static_cast<int>(id);
  return ic;
}

enum class MatchRule { collapse, suspend, case1 };

MorseMatching build_matching(const TwistedEnumeration& ten,
                             const TwistedLeqTable& table, int u, int v, int s,
                             MatchRule rule, std::int64_t max_chains) {
  if (!ten.in_iota(u) || !ten.in_iota(v))
    fail(errc::hypothesis_failed, "interval endpoints must be twisted identities");
  if (u == v || !table.leq(u, v))
    fail(errc::hypothesis_failed, "matching requires u < v");
  if (!ten.descent(v, s))
    fail(errc::hypothesis_failed, "s must be a right descent of v");

  const int us = ten.action(u, s);
  int excluded = -1;  // interval element whose chains are critical
  if (rule == MatchRule::collapse) {
    if (ten.at(us).ell_theta != 1)
      fail(errc::hypothesis_failed, "collapse requires u.s = us");
  } else {
    if (ten.descent(u, s))
      fail(errc::hypothesis_failed, "s must not be a descent of u");
    if (ten.at(us).ell_theta != 0)
      fail(errc::hypothesis_failed, "rule requires u.s = theta(s)us");
    if (rule == MatchRule::suspend) {
      if (us == v)
        fail(errc::hypothesis_failed, "u.s = v: suspension interval degenerates");
      excluded = us;
    } else {
      const int vs = ten.action(v, s);
      if (vs == u || is_full(ten, table, u, vs))
        fail(errc::hypothesis_failed, "case I requires [u, v.s] not full");
      excluded = vs;
    }
  }

  MorseMatching m;
  IntervalCells ic = interval_cells(ten, table, u, v, max_chains);
  m.interval_vertices = ic.vertices;
  m.cells = ic.cells;
  m.partner.assign(m.cells.size(), -1);

  auto local_of = [&ic](int enum_idx) -> int {
    const auto it = std::lower_bound(ic.vertices.begin(), ic.vertices.end(), enum_idx);
    if (it == ic.vertices.end() || *it != enum_idx) return -1;
    return static_cast<int>(it - ic.vertices.begin());
  };
  const int excluded_local = excluded == -1 ? -1 : local_of(excluded);
  if (excluded != -1 && excluded_local == -1)
    fail(errc::hypothesis_failed, "internal: marker element escapes the interval");

  for (std::size_t id = 0; id < m.cells.size(); ++id) {
    const std::vector<int>& cell = m.cells[id];
    if (excluded_local != -1 &&
        std::find(cell.begin(), cell.end(), excluded_local) != cell.end()) {
      m.partner[id] = -1;
      continue;
    }
    int pivot;  // enumeration index of x_c
    if (rule == MatchRule::case1) {
      // max over the chain (default u) of the branch-2 ascents at s
      pivot = u;
      for (auto it = cell.rbegin(); it != cell.rend(); ++it) {
        const int x = ic.vertices[*it];
        if (!ten.descent(x, s) && ten.at(ten.action(x, s)).ell == ten.at(x).ell + 2) {
          pivot = x;
          break;
        }
      }
    } else {
      // min over the chain (default v) of the elements with descent s
      pivot = v;
      for (int lv : cell) {
        const int x = ic.vertices[lv];
        if (ten.descent(x, s)) {
          pivot = x;
          break;
        }
      }
    }
    const int image = ten.action(pivot, s);
    const int image_local = local_of(image);
    if (image_local == -1)
      fail(errc::hypothesis_failed, "internal: matching image escapes the interval");

    std::vector<int> mate = cell;
    const auto pos = std::lower_bound(mate.begin(), mate.end(), image_local);
    if (pos != mate.end() && *pos == image_local)
      mate.erase(pos);
    else
      mate.insert(pos, image_local);
    const auto mit = ic.cell_id.find(mate);
    if (mit == ic.cell_id.end())
      fail(errc::hypothesis_failed, "internal: matching image is not a chain");
    m.partner[id] = mit->second;
  }

  for (std::size_t id = 0; id < m.cells.size(); ++id) {
    if (m.partner[id] == -1) {
      m.critical.push_back(static_cast<int>(id));
      continue;
    }
    const int p = m.partner[id];
    if (m.partner[p] != static_cast<int>(id) ||
        std::abs(m.dim_of(p) - m.dim_of(static_cast<int>(id))) != 1)
      fail(errc::hypothesis_failed, "internal: matching is not an involution");
  }
  return m;
}

}  // namespace

MorseMatching morse_matching_collapse(const TwistedEnumeration& ten,
                                      const TwistedLeqTable& table, int u, int v,
                                      int s, std::int64_t max_chains) {
  return build_matching(ten, table, u, v, s, MatchRule::collapse, max_chains);
}

MorseMatching morse_matching_suspend(const TwistedEnumeration& ten,
                                     const TwistedLeqTable& table, int u, int v,
                                     int s, std::int64_t max_chains) {
  return build_matching(ten, table, u, v, s, MatchRule::suspend, max_chains);
}

MorseMatching morse_matching_case1(const TwistedEnumeration& ten,
                                   const TwistedLeqTable& table, int u, int v,
                                   int s, std::int64_t max_chains) {
  return build_matching(ten, table, u, v, s, MatchRule::case1, max_chains);
}

bool verify_acyclic(const MorseMatching& m) {
  const int n = static_cast<int>(m.cells.size());
  std::map<std::vector<int>, int> id_of;
  for (int i = 0; i < n; ++i) id_of[m.cells[i]] = i;

  std::vector<std::vector<int>> out(n);
  std::vector<int> indeg(n, 0);
  for (int c = 0; c < n; ++c) {
    const std::vector<int>& cell = m.cells[c];
    if (cell.empty()) continue;
    std::vector<int> face(cell.size() - 1);
    for (std::size_t k = 0; k < cell.size(); ++k) {
      std::size_t idx = 0;
      for (std::size_t q = 0; q < cell.size(); ++q)
        if (q != k) face[idx++] = cell[q];
      const int f = id_of.at(face);
      // matched edges point up, all others down
      if (m.partner[f] == c) {
        out[f].push_back(c);
        ++indeg[c];
      } else {
        out[c].push_back(f);
        ++indeg[f];
      }
    }
  }

  std::vector<int> queue;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) queue.push_back(i);
  std::size_t head = 0;
  int removed = 0;
  while (head < queue.size()) {
    const int x = queue[head++];
    ++removed;
    for (int y : out[x])
      if (--indeg[y] == 0) queue.push_back(y);
  }
  return removed == n;
}

}  // namespace coxiota
