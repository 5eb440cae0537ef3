#include "coxiota/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace coxiota {

namespace {

std::string cat(const char* prefix, long long n) {
  std::ostringstream os;
  os << prefix << n;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// CoxeterMatrix

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> entries)
    : entries_(std::move(entries)) {
  const int n = static_cast<int>(entries_.size());
  if (n == 0) fail(errc::malformed_matrix, "Coxeter matrix must be non-empty");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(entries_[i].size()) != n)
      fail(errc::malformed_matrix, "Coxeter matrix must be square");
    for (int j = 0; j < n; ++j) {
      const int m = entries_[i][j];
      if (m < 0) fail(errc::malformed_matrix, "negative bond order");
      if (i == j && m != 1)
        fail(errc::malformed_matrix, "diagonal entries must be 1");
      if (i != j && m == 1)
        fail(errc::malformed_matrix, "off-diagonal entries must not be 1");
      if (entries_[i][j] != entries_[j][i])
        fail(errc::malformed_matrix, "Coxeter matrix must be symmetric");
    }
  }
}

bool CoxeterMatrix::crystallographic() const {
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j) {
      const int m = bond(i, j);
      if (m != 2 && m != 3 && m != 4 && m != 6 && m != kInfinite) return false;
    }
  return true;
}

CoxeterMatrix CoxeterMatrix::restrict(const std::vector<int>& subset) const {
  const int k = static_cast<int>(subset.size());
  std::vector<std::vector<int>> sub(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub[i][j] = bond(subset[i], subset[j]);
  return CoxeterMatrix(std::move(sub));
}

// ---------------------------------------------------------------------------
// Finite type recognition

namespace {

struct ComponentType {
  std::string label;
  mpz_class order;
};

mpz_class factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

mpz_class two_pow(long n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return p;
}

// Classifies one connected component, given as indices into m.
std::optional<ComponentType> classify_component(const CoxeterMatrix& m,
                                                const std::vector<int>& comp) {
  const int k = static_cast<int>(comp.size());
  if (k == 1) return ComponentType{"A1", 2};

  int fours = 0, sixes = 0, highers = 0, infinites = 0, edges = 0;
  std::vector<int> degree(k, 0);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const int bond = m.bond(comp[a], comp[b]);
      if (bond == 2) continue;
      ++edges;
      ++degree[a];
      ++degree[b];
      if (bond == CoxeterMatrix::kInfinite)
        ++infinites;
      else if (bond == 4)
        ++fours;
      else if (bond == 6)
        ++sixes;
      else if (bond >= 5)
        ++highers;
    }
  if (infinites > 0) return std::nullopt;

  if (k == 2) {
    const int bond = m.bond(comp[0], comp[1]);
    if (bond == 3) return ComponentType{"A2", 6};
    if (bond == 4) return ComponentType{"B2", 8};
    if (bond == 6) return ComponentType{"G2", 12};
    return ComponentType{cat("I2(", bond) + ")", 2 * bond};
  }

  // rank >= 3: only crystallographic diagrams can reach this point
  if (sixes > 0 || highers > 0 || fours >= 2) return std::nullopt;
  if (edges != k - 1) return std::nullopt;  // a cycle somewhere

  const int branch_nodes =
      static_cast<int>(std::count_if(degree.begin(), degree.end(),
                                     [](int d) { return d >= 3; }));
  if (std::any_of(degree.begin(), degree.end(), [](int d) { return d > 3; }))
    return std::nullopt;

  if (fours == 1) {
    if (branch_nodes > 0) return std::nullopt;
    // path; locate the 4-edge
    bool at_end = false, in_middle_of_4 = false;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (m.bond(comp[a], comp[b]) == 4) {
          if (degree[a] == 1 || degree[b] == 1) at_end = true;
          if (k == 4 && degree[a] == 2 && degree[b] == 2) in_middle_of_4 = true;
        }
    if (at_end) return ComponentType{cat("B", k), two_pow(k) * factorial(k)};
    if (in_middle_of_4) return ComponentType{"F4", 1152};
    return std::nullopt;
  }

  // simply laced
  if (branch_nodes == 0) return ComponentType{cat("A", k), factorial(k + 1)};
  if (branch_nodes > 1) return std::nullopt;

  // single branch node: collect arm lengths
  std::vector<int> arms;
  for (int a = 0; a < k; ++a) {
    if (degree[a] != 1) continue;
    // walk from the leaf to the branch node
    int len = 0, prev = -1, cur = a;
    while (degree[cur] < 3) {
      ++len;
      int next = -1;
      for (int b = 0; b < k; ++b)
        if (b != cur && b != prev && m.bond(comp[cur], comp[b]) != 2) next = b;
      prev = cur;
      cur = next;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() != 3) return std::nullopt;
  if (arms[0] == 1 && arms[1] == 1)
    return ComponentType{cat("D", k), two_pow(k - 1) * factorial(k)};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 2)
    return ComponentType{"E6", 51840};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 3)
    return ComponentType{"E7", 2903040};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 4)
    return ComponentType{"E8", 696729600};
  return std::nullopt;
}

}  // namespace

std::optional<FiniteType> recognize_finite_type(const CoxeterMatrix& m) {
  const int n = m.rank();
  std::vector<int> comp_of(n, -1);
  std::vector<std::vector<int>> components;
  for (int i = 0; i < n; ++i) {
    if (comp_of[i] != -1) continue;
    std::vector<int> comp{i};
    comp_of[i] = static_cast<int>(components.size());
    for (std::size_t q = 0; q < comp.size(); ++q)
      for (int j = 0; j < n; ++j)
        if (comp_of[j] == -1 && m.bond(comp[q], j) != 2 && comp[q] != j) {
          comp_of[j] = comp_of[i];
          comp.push_back(j);
        }
    components.push_back(std::move(comp));
  }

  FiniteType t{"", 1};
  for (const auto& comp : components) {
    auto ct = classify_component(m, comp);
    if (!ct) return std::nullopt;
    if (!t.label.empty()) t.label += "x";
    t.label += ct->label;
    t.order *= ct->order;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Element

bool Element::operator<(const Element& o) const {
  if (payload_.index() != o.payload_.index())
    return payload_.index() < o.payload_.index();
  if (is_matrix()) return matrix() < o.matrix();
  const DihedralWord &a = dihedral(), &b = o.dihedral();
  if (a.len != b.len) return a.len < b.len;
  return a.first < b.first;
}

std::size_t Element::hash() const {
  if (is_matrix()) return matrix().hash();
  const DihedralWord& d = dihedral();
  std::size_t h = static_cast<std::size_t>(d.len) * 1099511628211ull;
  h ^= static_cast<std::size_t>(d.first) + 0x9e3779b97f4a7c15ull;
  return h;
}

// ---------------------------------------------------------------------------
// Dihedral backend helpers. Elements of I2(m) are written r^a f^b with
// r = s0*s1 and f = s0, so f r = r^{-1} f. Words convert to and from this
// rotation form in O(1).

namespace {

struct DihRot {
  std::int64_t a = 0;
  int b = 0;
};

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

DihRot dihedral_to_rot(const DihedralWord& w, std::int64_t m) {
  const std::int64_t half = w.len / 2;
  const int odd = static_cast<int>(w.len & 1);
  DihRot r;
  r.b = odd;
  r.a = (w.first == 0) ? half : -(half + odd);
  r.a = mod_pos(r.a, m);
  return r;
}

DihedralWord rot_to_dihedral(DihRot r, std::int64_t m) {
  r.a = mod_pos(r.a, m);
  if (r.b == 0) {
    if (r.a == 0) return {0, 0};
    const std::int64_t l0 = 2 * r.a, l1 = 2 * (m - r.a);
    if (l0 < l1) return {l0, 0};
    if (l1 < l0) return {l1, 1};
    return {m, 0};  // longest element
  }
  const std::int64_t l0 = 2 * r.a + 1, l1 = 2 * (m - r.a) - 1;
  if (l0 < l1) return {l0, 0};
  if (l1 < l0) return {l1, 1};
  return {m, 0};
}

DihRot rot_mult(const DihRot& x, const DihRot& y, std::int64_t m) {
  DihRot r;
  r.a = mod_pos(x.a + (x.b ? -y.a : y.a), m);
  r.b = x.b ^ y.b;
  return r;
}

DihRot rot_gen(int s, std::int64_t m) {
  return s == 0 ? DihRot{0, 1} : DihRot{mod_pos(-1, m), 1};
}

}  // namespace

// ---------------------------------------------------------------------------
// CoxeterSystem

CoxeterSystem::CoxeterSystem(CoxeterMatrix m) : matrix_(std::move(m)) {}

CoxeterSystem CoxeterSystem::build(CoxeterMatrix m) {
  CoxeterSystem sys(std::move(m));
  const CoxeterMatrix& cm = sys.matrix_;
  const int n = cm.rank();

  if (n == 2 && !cm.crystallographic()) {
    if (cm.bond(0, 1) == CoxeterMatrix::kInfinite)
      fail(errc::malformed_matrix, "unreachable: infinite bond is crystallographic");
    sys.backend_ = Backend::dihedral;
    sys.finite_type_ = recognize_finite_type(cm);
    return sys;
  }

  if (!cm.crystallographic())
    fail(errc::non_crystallographic,
         "rank >= 3 systems require bonds in {2,3,4,6,infinity}");

  sys.backend_ = Backend::matrix;
  sys.cartan_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) sys.cartan_[i][i] = 2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int lo = 0, hi = 0;
      switch (cm.bond(i, j)) {
        case 2: lo = 0; hi = 0; break;
        case 3: lo = -1; hi = -1; break;
        case 4: lo = -1; hi = -2; break;
        case 6: lo = -1; hi = -3; break;
        case CoxeterMatrix::kInfinite: lo = -2; hi = -2; break;
        default: fail(errc::non_crystallographic, "unexpected bond");
      }
      sys.cartan_[i][j] = lo;
      sys.cartan_[j][i] = hi;
    }

  sys.gens_.reserve(n);
  for (int s = 0; s < n; ++s) {
    IntMatrix g = IntMatrix::identity(n);
    for (int j = 0; j < n; ++j) g.at(s, j) -= sys.cartan_[s][j];
    sys.gens_.push_back(std::move(g));
  }
  sys.finite_type_ = recognize_finite_type(cm);
  return sys;
}

void CoxeterSystem::check_element(const Element& w) const {
  if (backend_ == Backend::matrix) {
    if (!w.is_matrix() || w.matrix().size() != rank())
      fail(errc::backend_mismatch, "element does not belong to this system");
  } else if (w.is_matrix()) {
    fail(errc::backend_mismatch, "element does not belong to this system");
  }
}

Element CoxeterSystem::identity() const {
  if (backend_ == Backend::dihedral) return Element(0, 0);
  Element e{IntMatrix::identity(rank())};
  e.cache_length(0);
  return e;
}

Element CoxeterSystem::generator(int s) const {
  if (s < 0 || s >= rank()) fail(errc::bad_input, "generator index out of range");
  if (backend_ == Backend::dihedral) return Element(1, s);
  Element g{gens_[s]};
  g.cache_length(1);
  return g;
}

Element CoxeterSystem::multiply(const Element& w, const Element& v) const {
  check_element(w);
  check_element(v);
  if (backend_ == Backend::dihedral) {
    const std::int64_t m = matrix_.bond(0, 1);
    const DihedralWord d = rot_to_dihedral(
        rot_mult(dihedral_to_rot(w.dihedral(), m), dihedral_to_rot(v.dihedral(), m), m),
        m);
    return Element(d.len, d.first);
  }
  return Element{w.matrix() * v.matrix()};
}

Element CoxeterSystem::multiply_gen(const Element& w, int s) const {
  if (s < 0 || s >= rank()) fail(errc::bad_input, "generator index out of range");
  if (backend_ == Backend::dihedral) {
    const std::int64_t m = matrix_.bond(0, 1);
    const DihedralWord d = rot_to_dihedral(
        rot_mult(dihedral_to_rot(w.dihedral(), m), rot_gen(s, m), m), m);
    return Element(d.len, d.first);
  }
  // Right multiplication by a generator is a column update:
  // col_j -= a(s,j) * col_s for j != s, then col_s = -col_s.
  const IntMatrix& mw = w.matrix();
  const int n = rank();
  IntMatrix out = mw;
  for (int j = 0; j < n; ++j) {
    if (j == s) continue;
    const int a = cartan_[s][j];
    if (a == 0) continue;
    for (int i = 0; i < n; ++i) {
      // out(i,j) -= a * mw(i,s)
      if (a == -1)
        out.at(i, j) += mw.at(i, s);
      else
        mpz_addmul_ui(out.at(i, j).get_mpz_t(), mw.at(i, s).get_mpz_t(),
                      static_cast<unsigned long>(-a));
    }
  }
  for (int i = 0; i < n; ++i) mpz_neg(out.at(i, s).get_mpz_t(), out.at(i, s).get_mpz_t());
  return Element{std::move(out)};
}

Element CoxeterSystem::gen_multiply(int s, const Element& w) const {
  if (s < 0 || s >= rank()) fail(errc::bad_input, "generator index out of range");
  if (backend_ == Backend::dihedral) {
    const std::int64_t m = matrix_.bond(0, 1);
    const DihedralWord d = rot_to_dihedral(
        rot_mult(rot_gen(s, m), dihedral_to_rot(w.dihedral(), m), m), m);
    return Element(d.len, d.first);
  }
  // Left multiplication by a generator is a row update:
  // row_s = -row_s - sum_{k != s} a(s,k) * row_k.
  const IntMatrix& mw = w.matrix();
  const int n = rank();
  IntMatrix out = mw;
  for (int j = 0; j < n; ++j) mpz_neg(out.at(s, j).get_mpz_t(), out.at(s, j).get_mpz_t());
  for (int k = 0; k < n; ++k) {
    if (k == s) continue;
    const int a = cartan_[s][k];
    if (a == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (a == -1)
        out.at(s, j) += mw.at(k, j);
      else
        mpz_addmul_ui(out.at(s, j).get_mpz_t(), mw.at(k, j).get_mpz_t(),
                      static_cast<unsigned long>(-a));
    }
  }
  return Element{std::move(out)};
}

Element CoxeterSystem::inverse(const Element& w) const {
  ReducedWord word = reduced_word(w);
  std::reverse(word.begin(), word.end());
  return eval_word(word);
}

bool CoxeterSystem::is_right_descent(const Element& w, int s) const {
  if (s < 0 || s >= rank()) fail(errc::bad_input, "generator index out of range");
  check_element(w);
  if (backend_ == Backend::dihedral) {
    const DihedralWord& d = w.dihedral();
    const std::int64_t m = matrix_.bond(0, 1);
    if (d.len == 0) return false;
    if (d.len == m) return true;  // longest element: every generator descends
    const int last = (d.len & 1) ? d.first : 1 - d.first;
    return last == s;
  }
  // s is a right descent iff w sends the simple root of s to a negative
  // root, i.e. column s is componentwise <= 0.
  const IntMatrix& mw = w.matrix();
  for (int i = 0; i < rank(); ++i)
    if (sgn(mw.at(i, s)) > 0) return false;
  return true;
}

int CoxeterSystem::first_right_descent(const Element& w) const {
  for (int s = 0; s < rank(); ++s)
    if (is_right_descent(w, s)) return s;
  return -1;
}

std::int64_t CoxeterSystem::length(const Element& w) const {
  check_element(w);
  if (backend_ == Backend::dihedral) return w.dihedral().len;
  const std::int64_t cached = w.cached_length();
  if (cached >= 0) return cached;
  std::int64_t len = 0;
  Element cur = w;
  for (int s = first_right_descent(cur); s != -1; s = first_right_descent(cur)) {
    cur = multiply_gen(cur, s);
    ++len;
  }
  w.cache_length(len);
  return len;
}

ReducedWord CoxeterSystem::reduced_word(const Element& w) const {
  check_element(w);
  ReducedWord strips;
  Element cur = w;
  for (int s = first_right_descent(cur); s != -1; s = first_right_descent(cur)) {
    strips.push_back(s);
    cur = multiply_gen(cur, s);
  }
  w.cache_length(static_cast<std::int64_t>(strips.size()));
  std::reverse(strips.begin(), strips.end());
  return strips;
}

Element CoxeterSystem::eval_word(std::span<const int> word) const {
  Element w = identity();
  for (int s : word) w = multiply_gen(w, s);
  return w;
}

bool CoxeterSystem::bruhat_leq(const Element& u, const Element& v) const {
  check_element(u);
  check_element(v);
  std::int64_t lu = length(u), lv = length(v);
  Element uu = u, vv = v;
  while (true) {
    if (lu == 0) return true;
    if (lu > lv) return false;
    const int s = first_right_descent(vv);
    if (is_right_descent(uu, s)) {
      uu = multiply_gen(uu, s);
      --lu;
    }
    vv = multiply_gen(vv, s);
    --lv;
  }
}

Element CoxeterSystem::longest_element(const std::vector<int>& J) const {
  for (int s : J)
    if (s < 0 || s >= rank()) fail(errc::bad_input, "generator index out of range");
  if (!J.empty() && !recognize_finite_type(matrix_.restrict(J)))
    fail(errc::infinite_parabolic, "parabolic subgroup is infinite");
  Element w = identity();
  bool ascended = true;
  while (ascended) {
    ascended = false;
    for (int s : J) {
      if (!is_right_descent(w, s)) {
        w = multiply_gen(w, s);
        ascended = true;
        break;
      }
    }
  }
  return w;
}

Element CoxeterSystem::apply_diagram_perm(const std::vector<int>& perm,
                                          const Element& w) const {
  ReducedWord word = reduced_word(w);
  for (int& s : word) s = perm[s];
  return eval_word(word);
}

Enumeration CoxeterSystem::enumerate(std::optional<std::int64_t> max_length,
                                     const Budget& budget) const {
  if (!max_length.has_value() && !is_finite())
    fail(errc::infinite_group,
         "full enumeration requires a recognized finite type");

  Enumeration en;
  auto try_insert = [&en](const Element& e) -> bool {
    const std::size_t h = e.hash();
    auto [lo, hi] = en.by_hash_.equal_range(h);
    for (auto it = lo; it != hi; ++it)
      if (en.elements_[static_cast<std::size_t>(it->second)] == e) return false;
    en.by_hash_.emplace(h, static_cast<std::int64_t>(en.elements_.size()));
    en.elements_.push_back(e);
    return true;
  };

  en.layer_offsets_.push_back(0);
  Element e = identity();
  e.cache_length(0);
  try_insert(e);
  en.layer_offsets_.push_back(1);

  std::int64_t layer_begin = 0, layer_end = 1, len = 0;
  while (layer_begin < layer_end) {
    if (max_length && len >= *max_length) {
      en.complete_ = false;
      return en;
    }
    ++len;
    for (std::int64_t i = layer_begin; i < layer_end; ++i)
      for (int s = 0; s < rank(); ++s) {
        Element next = multiply_gen(en.elements_[static_cast<std::size_t>(i)], s);
        next.cache_length(len);  // BFS discovers elements at their length
        if (try_insert(next) &&
            static_cast<std::int64_t>(en.elements_.size()) > budget.max_elements)
          fail(errc::budget_exceeded, "element budget exceeded during enumeration");
      }
    layer_begin = layer_end;
    layer_end = static_cast<std::int64_t>(en.elements_.size());
    if (layer_end > layer_begin) en.layer_offsets_.push_back(layer_end);
  }
  en.complete_ = true;
  return en;
}

std::vector<std::vector<int>> CoxeterSystem::generator_conjugacy_classes() const {
  const int n = rank();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int m = matrix_.bond(i, j);
      if (CoxeterMatrix::finite_bond(m) && m >= 3 && m % 2 == 1)
        parent[find(i)] = find(j);
    }
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (class_of[r] == -1) {
      class_of[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[class_of[r]].push_back(i);
  }
  return classes;
}

std::int64_t CoxeterSystem::absolute_length(const Element& w) const {
  check_element(w);
  if (!is_finite())
    fail(errc::infinite_group, "absolute length requires a finite group");

  // Reflections: close the generator set under conjugation by generators.
  std::vector<Element> reflections;
  std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
  auto add = [&](const Element& t) -> bool {
    const std::size_t h = t.hash();
    for (std::size_t idx : seen[h])
      if (reflections[idx] == t) return false;
    seen[h].push_back(reflections.size());
    reflections.push_back(t);
    return true;
  };
  for (int s = 0; s < rank(); ++s) add(generator(s));
  for (std::size_t q = 0; q < reflections.size(); ++q)
    for (int s = 0; s < rank(); ++s)
      add(gen_multiply(s, multiply_gen(reflections[q], s)));

  // BFS from the identity in the Cayley graph on the reflection set.
  if (length(w) == 0) return 0;
  std::unordered_map<std::size_t, std::vector<Element>> visited;
  auto visit = [&visited](const Element& e) -> bool {
    auto& bucket = visited[e.hash()];
    for (const Element& b : bucket)
      if (b == e) return false;
    bucket.push_back(e);
    return true;
  };
  std::vector<Element> frontier{identity()};
  visit(frontier.front());
  std::int64_t dist = 0;
  while (!frontier.empty()) {
    ++dist;
    std::vector<Element> next;
    for (const Element& x : frontier)
      for (const Element& t : reflections) {
        Element y = multiply(x, t);
        if (y == w) return dist;
        if (visit(y)) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  fail(errc::bad_input, "unreachable element in absolute-length BFS");
}

// ---------------------------------------------------------------------------
// Enumeration

std::int64_t Enumeration::length_of(std::int64_t i) const {
  const auto it = std::upper_bound(layer_offsets_.begin(), layer_offsets_.end(), i);
  return static_cast<std::int64_t>(it - layer_offsets_.begin()) - 1;
}

std::optional<std::int64_t> Enumeration::index_of(const Element& e) const {
  auto [lo, hi] = by_hash_.equal_range(e.hash());
  for (auto it = lo; it != hi; ++it)
    if (elements_[static_cast<std::size_t>(it->second)] == e) return it->second;
  return std::nullopt;
}

}  // namespace coxiota
