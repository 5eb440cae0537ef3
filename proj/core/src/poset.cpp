#include "coxiota/poset.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"

namespace coxiota {

std::string index_word_string(std::span<const int> word, int rank) {
  if (word.empty()) return "e";
  std::ostringstream os;
  if (rank <= 9) {
    for (int s : word) os << (s + 1);
  } else {
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i) os << ' ';
      os << (word[i] + 1);
    }
  }
  return os.str();
}

std::vector<int> parse_index_word(const std::string& text, int rank) {
  std::vector<int> out;
  if (text.empty() || text == "e") return out;
  if (rank <= 9 && text.find(' ') == std::string::npos) {
    for (char c : text) {
      if (c < '1' || c > '9') fail(errc::bad_input, "bad index word: " + text);
      const int s = c - '1';
      if (s >= rank) fail(errc::bad_input, "index out of range in: " + text);
      out.push_back(s);
    }
    return out;
  }
  std::istringstream is(text);
  int v = 0;
  while (is >> v) {
    if (v < 1 || v > rank) fail(errc::bad_input, "index out of range in: " + text);
    out.push_back(v - 1);
  }
  if (!is.eof()) fail(errc::bad_input, "bad index word: " + text);
  return out;
}

// ---------------------------------------------------------------------------
// RankedPoset

RankedPoset RankedPoset::build(std::vector<PosetNode> nodes,
                               const std::function<bool(int, int)>& leq,
                               std::optional<int> truncation_rank) {
  RankedPoset p;
  p.nodes_ = std::move(nodes);
  p.truncation_rank_ = truncation_rank;
  const int n = p.size();
  p.leq_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (leq(u, v)) {
        p.leq_[static_cast<std::size_t>(u) * n + v] = 1;
        if (u != v && p.nodes_[u].rank >= p.nodes_[v].rank)
          fail(errc::inconsistent_ranks, "u < v with rank(u) >= rank(v)");
      }

  for (int u = 0; u < n; ++u)
    if (!p.leq(u, u)) fail(errc::bad_input, "order relation is not reflexive");
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && p.leq(u, v) && p.leq(v, u))
        fail(errc::bad_input, "order relation is not antisymmetric");

  auto check_triple = [&p](int a, int b, int c) {
    if (p.leq(a, b) && p.leq(b, c) && !p.leq(a, c))
      fail(errc::bad_input, "order relation is not transitive");
  };
  if (n <= 200) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 200000; ++t) check_triple(pick(rng), pick(rng), pick(rng));
  }

  // Transitive reduction, rank-layered: u is a lower cover of v iff u < v
  // and no w lies strictly between.
  p.upper_.assign(n, {});
  p.lower_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    std::vector<int> below;
    for (int u = 0; u < n; ++u)
      if (u != v && p.leq(u, v)) below.push_back(u);
    for (int u : below) {
      bool covered = true;
      for (int w : below)
        if (w != u && p.leq(u, w)) {
          covered = false;
          break;
        }
      if (covered) {
        p.lower_[v].push_back(u);
        p.upper_[u].push_back(v);
      }
    }
  }
  for (auto& ups : p.upper_) std::sort(ups.begin(), ups.end());
  for (auto& los : p.lower_) std::sort(los.begin(), los.end());
  return p;
}

int RankedPoset::minimum() const {
  int m = -1;
  for (int i = 0; i < size(); ++i) {
    bool is_min = true;
    for (int j = 0; j < size(); ++j)
      if (!leq(i, j)) {
        is_min = false;
        break;
      }
    if (is_min) {
      if (m != -1) fail(errc::bad_input, "poset has no unique minimum");
      m = i;
    }
  }
  if (m == -1) fail(errc::bad_input, "poset has no minimum");
  return m;
}

// ---------------------------------------------------------------------------
// Gradedness

namespace {

// Greedy saturated chain from `from` to `to` inside [from, to], following
// the smallest-id cover at each step.
std::vector<int> greedy_chain(const RankedPoset& p, int from, int to) {
  std::vector<int> chain{from};
  int cur = from;
  while (cur != to) {
    int next = -1;
    for (int w : p.upper_covers(cur))
      if (p.leq(w, to)) {
        next = w;
        break;
      }
    if (next == -1) fail(errc::bad_input, "internal: broken interval chain");
    chain.push_back(next);
    cur = next;
  }
  return chain;
}

}  // namespace

GradednessReport check_graded(const RankedPoset& p) {
  GradednessReport report;
  const int min = p.minimum();
  for (int b = 0; b < p.size(); ++b) {
    for (int a : p.lower_covers(b)) {
      if (p.rank(b) - p.rank(a) == 1) continue;
      report.graded = false;
      // Short chain: through the offending cover.
      report.chain_short = greedy_chain(p, min, a);
      report.chain_short.push_back(b);
      // Long chain: the canonical rank-saturated chain would do, but any
      // saturated chain of a different length is a witness. DFS in id order.
      const std::size_t short_len = report.chain_short.size();
      std::vector<int> path{min};
      auto dfs = [&](auto&& self, int cur) -> bool {
        if (cur == b)
          return path.size() != short_len;
        for (int w : p.upper_covers(cur)) {
          if (!p.leq(w, b)) continue;
          path.push_back(w);
          if (self(self, w)) return true;
          path.pop_back();
        }
        return false;
      };
      if (!dfs(dfs, min))
        fail(errc::bad_input, "internal: no witness chain of distinct length");
      report.chain_long = path;
      if (report.chain_long.size() < report.chain_short.size())
        std::swap(report.chain_long, report.chain_short);
      return report;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Moebius function

std::vector<long long> mobius_row(const RankedPoset& p, int u) {
  const int n = p.size();
  std::vector<long long> mu(n, 0);
  std::vector<int> above;
  for (int v = 0; v < n; ++v)
    if (p.leq(u, v)) above.push_back(v);  // ids ascend with rank
  for (int v : above) {
    if (v == u) {
      mu[u] = 1;
      continue;
    }
    long long sum = 0;
    for (int w : above)
      if (w != v && p.leq(w, v)) sum += mu[w];
    mu[v] = -sum;
  }
  return mu;
}

long long mobius(const RankedPoset& p, int u, int v) {
  if (!p.leq(u, v)) fail(errc::not_comparable, "mobius requires u <= v");
  return mobius_row(p, u)[v];
}

std::vector<int> maximal_elements(const RankedPoset& p) {
  std::vector<int> out;
  for (int i = 0; i < p.size(); ++i)
    if (p.upper_covers(i).empty()) out.push_back(i);
  return out;
}

DirectednessReport directedness_within(const RankedPoset& p, bool complete) {
  const int n = p.size();
  const int words = (n + 63) / 64;
  std::vector<std::uint64_t> above(static_cast<std::size_t>(n) * words, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (p.leq(i, k))
        above[static_cast<std::size_t>(i) * words + k / 64] |= 1ull << (k % 64);

  DirectednessReport report;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      bool bounded = false;
      const std::uint64_t* ri = &above[static_cast<std::size_t>(i) * words];
      const std::uint64_t* rj = &above[static_cast<std::size_t>(j) * words];
      for (int w = 0; w < words; ++w)
        if (ri[w] & rj[w]) {
          bounded = true;
          break;
        }
      if (bounded) {
        ++report.bounded;
      } else if (complete) {
        ++report.unbounded;
        if (!report.unbounded_witness) report.unbounded_witness = {i, j};
      } else {
        ++report.unknown;
        if (!report.unknown_witness) report.unknown_witness = {i, j};
      }
    }
  return report;
}

// ---------------------------------------------------------------------------
// Exports

std::string export_dot(const RankedPoset& p) {
  std::ostringstream os;
  os << "digraph bruhat {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  int max_rank = 0;
  for (int i = 0; i < p.size(); ++i) max_rank = std::max(max_rank, p.rank(i));
  for (int r = 0; r <= max_rank; ++r) {
    os << "  { rank=same;";
    for (int i = 0; i < p.size(); ++i)
      if (p.rank(i) == r) {
        const std::string& label = p.node(i).sexpr;
        os << " n" << i << " [label=\"" << (label.empty() ? "e" : label) << "\"];";
      }
    os << " }\n";
  }
  for (int i = 0; i < p.size(); ++i)
    for (int j : p.upper_covers(i)) os << "  n" << i << " -> n" << j << ";\n";
  os << "}\n";
  return os.str();
}

std::string export_json(const RankedPoset& p) {
  nlohmann::ordered_json doc;
  doc["elements"] = nlohmann::ordered_json::array();
  for (int i = 0; i < p.size(); ++i) {
    nlohmann::ordered_json e;
    e["id"] = i;
    e["sexpr"] = p.node(i).sexpr;
    e["word"] = p.node(i).word;
    e["rank"] = p.rank(i);
    e["length"] = p.node(i).length;
    doc["elements"].push_back(std::move(e));
  }
  doc["covers"] = nlohmann::ordered_json::array();
  for (int i = 0; i < p.size(); ++i)
    for (int j : p.upper_covers(i)) doc["covers"].push_back({i, j});
  return doc.dump(2) + "\n";
}

RankedPoset parse_poset_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<PosetNode> nodes;
  for (const auto& e : doc.at("elements")) {
    PosetNode n;
    n.sexpr = e.at("sexpr").get<std::string>();
    n.word = e.at("word").get<std::string>();
    n.rank = e.at("rank").get<int>();
    n.length = e.at("length").get<std::int64_t>();
    if (e.at("id").get<int>() != static_cast<int>(nodes.size()))
      fail(errc::bad_input, "poset JSON ids must be 0..n-1 in order");
    nodes.push_back(std::move(n));
  }
  const int n = static_cast<int>(nodes.size());
  std::vector<std::uint8_t> closure(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) closure[static_cast<std::size_t>(i) * n + i] = 1;
  for (const auto& c : doc.at("covers"))
    closure[static_cast<std::size_t>(c.at(0).get<int>()) * n + c.at(1).get<int>()] = 1;
  // Floyd-Warshall style closure; node count is desk scale.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (closure[static_cast<std::size_t>(i) * n + k])
        for (int j = 0; j < n; ++j)
          if (closure[static_cast<std::size_t>(k) * n + j])
            closure[static_cast<std::size_t>(i) * n + j] = 1;
  return RankedPoset::build(
      std::move(nodes),
      [&closure, n](int u, int v) {
        return closure[static_cast<std::size_t>(u) * n + v] != 0;
      },
      std::nullopt);
}

// ---------------------------------------------------------------------------
// Bridges from the twisted layer

namespace {

BruhatPoset make_bruhat_poset(const TwistedEnumeration& ten,
                              const TwistedLeqTable& table, bool iota_only) {
  BruhatPoset bp;
  const CoxeterSystem& sys = ten.system();
  for (int i = 0; i < ten.size(); ++i) {
    if (iota_only && !ten.in_iota(i)) continue;
    bp.enum_index.push_back(i);
  }
  std::vector<PosetNode> nodes;
  nodes.reserve(bp.enum_index.size());
  for (int i : bp.enum_index) {
    const TwistedElement& te = ten.at(i);
    PosetNode n;
    n.sexpr = te.sexpr.empty() ? "" : index_word_string(te.sexpr, sys.rank());
    ReducedWord w = sys.reduced_word(te.element);
    n.word = w.empty() ? "" : index_word_string(w, sys.rank());
    n.rank = static_cast<int>(te.rho);
    n.length = te.ell;
    nodes.push_back(std::move(n));
  }
  const std::vector<int>& idx = bp.enum_index;
  bp.poset = RankedPoset::build(
      std::move(nodes),
      [&ten, &table, &idx](int u, int v) { return table.leq(idx[u], idx[v]); },
      ten.truncation_rank());
  return bp;
}

}  // namespace

BruhatPoset make_iota_poset(const TwistedEnumeration& ten,
                            const TwistedLeqTable& table) {
  return make_bruhat_poset(ten, table, true);
}

BruhatPoset make_involution_poset(const TwistedEnumeration& ten,
                                  const TwistedLeqTable& table) {
  return make_bruhat_poset(ten, table, false);
}

// ---------------------------------------------------------------------------
// Coxeter-power upper bounds

TwistedElement coxeter_power_upper_bound(
    const CoxeterSystem& sys, const TwistedAutomorphism& theta,
    const TwistedElement& u, const TwistedElement& v, const std::vector<int>& s1,
    const std::vector<int>& s2, const std::vector<int>& s3, int k_max) {
  if (sys.is_finite())
    fail(errc::no_partition, "Coxeter-power bound applies to infinite groups");
  std::vector<int> seen(sys.rank(), 0);
  for (const auto* part : {&s1, &s2, &s3})
    for (int s : *part) {
      if (s < 0 || s >= sys.rank() || seen[s]++)
        fail(errc::no_partition, "parts must partition the generator set");
    }
  for (int s = 0; s < sys.rank(); ++s)
    if (!seen[s]) fail(errc::no_partition, "parts must partition the generator set");
  for (int s : s3)
    if (theta(s) != s) fail(errc::no_partition, "S3 must be pointwise fixed");
  for (int s : s1)
    if (std::find(s2.begin(), s2.end(), theta(s)) == s2.end())
      fail(errc::no_partition, "theta(S1) must equal S2");
  if (s1.size() != s2.size()) fail(errc::no_partition, "theta(S1) must equal S2");
  for (const auto* part : {&s1, &s2, &s3})
    for (std::size_t a = 0; a < part->size(); ++a)
      for (std::size_t b = a + 1; b < part->size(); ++b)
        if (sys.coxeter_matrix().bond((*part)[a], (*part)[b]) != 2)
          fail(errc::no_partition, "parts must commute internally");

  const Element c = sys.multiply(
      sys.multiply(sys.longest_element(s1), sys.longest_element(s3)),
      sys.longest_element(s2));
  Element ck = sys.identity();
  for (int k = 1; k <= k_max; ++k) {
    ck = sys.multiply(ck, c);
    Element c2k = sys.multiply(ck, ck);
    if (sys.multiply(apply_theta(sys, theta, sys.inverse(ck)), ck) != c2k)
      fail(errc::no_partition, "internal: theta(c^-k) c^k != c^2k");
    TwistedElement bound = make_twisted(sys, theta, c2k);
    if (bound.ell_theta != 0)
      fail(errc::no_partition, "internal: c^2k is not a twisted identity");
    if (bruhat_leq_twisted(sys, theta, u, bound) &&
        bruhat_leq_twisted(sys, theta, v, bound))
      return bound;
  }
  fail(errc::k_budget, "no Coxeter power bound found within k_max");
}

}  // namespace coxiota
