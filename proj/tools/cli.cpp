#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coxiota/poincare.hpp"
#include "coxiota/poset.hpp"
#include "coxiota/presets.hpp"
#include "coxiota/topology.hpp"

namespace coxiota::cli {
namespace {

using nlohmann::ordered_json;

struct Options {
  std::string group;
  std::string theta;
  std::string set = "iota";
  std::string format = "text";
  std::string check;
  std::optional<int> max_rank;
  std::int64_t budget_elements = 1'000'000;
  std::int64_t budget_chains = 2'000'000;
  std::vector<std::string> interval;
};

int exit_code_of(const error& e) {
  switch (e.code()) {
    case errc::budget_exceeded:
    case errc::chain_budget:
    case errc::subword_budget:
    case errc::k_budget:
      return 2;
    default:
      return 3;
  }
}

struct Workspace {
  GroupSpec spec;
  TwistedEnumeration ten;
  TwistedLeqTable table;
};

Workspace make_workspace(const Options& opt) {
  GroupSpec spec = resolve_group(opt.group, opt.theta);
  std::optional<int> mr = opt.max_rank;
  if (!mr && !spec.system.is_finite())
    fail(errc::bad_input, "infinite group: an explicit --max-rank is required");
  Budget budget{opt.budget_elements};
  TwistedEnumeration ten = TwistedEnumeration::run(spec.system, spec.theta, mr, budget);
  TwistedLeqTable table = compute_leq_table(ten);
  return Workspace{std::move(spec), std::move(ten), std::move(table)};
}

std::string label_of(const TwistedEnumeration& ten, int i) {
  return index_word_string(ten.at(i).sexpr, ten.system().rank());
}

std::string chain_text(const RankedPoset& p, const std::vector<int>& chain) {
  std::ostringstream os;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (k) os << " < ";
    const std::string& s = p.node(chain[k]).sexpr;
    os << (s.empty() ? "e" : s);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// enumerate

int cmd_enumerate(const Options& opt, std::ostream& out) {
  GroupSpec spec = resolve_group(opt.group, opt.theta);
  Budget budget{opt.budget_elements};

  if (opt.set == "W") {
    std::optional<std::int64_t> max_len;
    if (opt.max_rank) max_len = *opt.max_rank;
    if (!max_len && !spec.system.is_finite())
      fail(errc::bad_input, "infinite group: an explicit --max-rank is required");
    Enumeration en = spec.system.enumerate(max_len, budget);
    std::vector<std::pair<std::string, std::int64_t>> rows;
    for (std::int64_t i = 0; i < en.size(); ++i) {
      ReducedWord w = spec.system.reduced_word(en.at(i));
      rows.emplace_back(index_word_string(w, spec.system.rank()), en.length_of(i));
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) {
                return a.second != b.second ? a.second < b.second : a.first < b.first;
              });
    if (opt.format == "json") {
      ordered_json doc;
      doc["group"] = opt.group;
      doc["set"] = "W";
      doc["rows"] = ordered_json::array();
      for (const auto& [word, len] : rows)
        doc["rows"].push_back({{"word", word}, {"length", len}});
      out << doc.dump(2) << "\n";
    } else {
      out << "# group " << opt.group << " set W (" << rows.size() << " elements)\n";
      out << "# word length\n";
      for (const auto& [word, len] : rows) out << word << " " << len << "\n";
    }
    return 0;
  }

  if (opt.set != "inv" && opt.set != "iota")
    fail(errc::bad_input, "--set must be one of W, inv, iota");
  Workspace ws = make_workspace(opt);
  std::vector<int> ids;
  for (int i = 0; i < ws.ten.size(); ++i)
    if (opt.set == "inv" || ws.ten.in_iota(i)) ids.push_back(i);

  if (opt.format == "json") {
    ordered_json doc;
    doc["group"] = opt.group;
    doc["set"] = opt.set;
    if (auto tr = ws.ten.truncation_rank()) doc["truncated_at"] = *tr;
    doc["rows"] = ordered_json::array();
    for (int i : ids) {
      const TwistedElement& te = ws.ten.at(i);
      doc["rows"].push_back(
          {{"sexpr", label_of(ws.ten, i)},
           {"rho", te.rho},
           {"length", te.ell},
           {"ell_theta", te.ell_theta},
           {"word", index_word_string(ws.spec.system.reduced_word(te.element),
                                      ws.spec.system.rank())}});
    }
    out << doc.dump(2) << "\n";
  } else {
    out << "# group " << opt.group << " set " << opt.set << " (" << ids.size()
        << " elements" << (ws.ten.complete() ? "" : ", truncated") << ")\n";
    out << "# sexpr rho length ell_theta word\n";
    for (int i : ids) {
      const TwistedElement& te = ws.ten.at(i);
      out << label_of(ws.ten, i) << " " << te.rho << " " << te.ell << " "
          << te.ell_theta << " "
          << index_word_string(ws.spec.system.reduced_word(te.element),
                               ws.spec.system.rank())
          << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// poset

int cmd_poset(const Options& opt, std::ostream& out) {
  if (opt.set != "inv" && opt.set != "iota")
    fail(errc::bad_input, "--set must be iota or inv for posets");
  Workspace ws = make_workspace(opt);
  BruhatPoset bp = opt.set == "iota" ? make_iota_poset(ws.ten, ws.table)
                                     : make_involution_poset(ws.ten, ws.table);
  if (opt.format == "dot" || opt.format == "text")
    out << export_dot(bp.poset);
  else if (opt.format == "json")
    out << export_json(bp.poset);
  else
    fail(errc::bad_input, "--format must be dot or json");
  return 0;
}

// ---------------------------------------------------------------------------
// homology

int cmd_homology(const Options& opt, std::ostream& out) {
  if (opt.interval.size() != 2)
    fail(errc::bad_input, "--interval takes the two endpoint expressions");
  GroupSpec spec = resolve_group(opt.group, opt.theta);
  const std::vector<int> u_expr =
      parse_index_word(opt.interval[0], spec.system.rank());
  const std::vector<int> v_expr =
      parse_index_word(opt.interval[1], spec.system.rank());
  TwistedElement u =
      make_twisted(spec.system, spec.theta, eval_sexpr(spec.system, spec.theta, u_expr));
  TwistedElement v =
      make_twisted(spec.system, spec.theta, eval_sexpr(spec.system, spec.theta, v_expr));
  if (u.ell_theta != 0 || v.ell_theta != 0)
    fail(errc::bad_input, "interval endpoints must be twisted identities");

  std::optional<int> mr;
  if (!spec.system.is_finite()) mr = static_cast<int>(v.rho);
  Budget budget{opt.budget_elements};
  TwistedEnumeration ten = TwistedEnumeration::run(spec.system, spec.theta, mr, budget);
  TwistedLeqTable table = compute_leq_table(ten);
  const auto ui = ten.index_of(u.element), vi = ten.index_of(v.element);
  if (!ui || !vi) fail(errc::truncation_too_small, "endpoint beyond enumeration");
  if (*ui == *vi || !table.leq(*ui, *vi))
    fail(errc::bad_input, "interval endpoints must satisfy u < v");

  BruhatPoset bp = make_iota_poset(ten, table);
  const auto pu = std::find(bp.enum_index.begin(), bp.enum_index.end(), *ui);
  const auto pv = std::find(bp.enum_index.begin(), bp.enum_index.end(), *vi);
  IntervalHomology ih = interval_homology(
      bp.poset, static_cast<int>(pu - bp.enum_index.begin()),
      static_cast<int>(pv - bp.enum_index.begin()), opt.budget_chains);
  out << "# interval (" << opt.interval[0] << ", " << opt.interval[1] << ") in "
      << opt.group << "\n";
  out << homology_report_text(ih);
  return 0;
}

// ---------------------------------------------------------------------------
// checks

struct CheckResult {
  bool pass = true;
  std::string detail;
  std::vector<std::string> witness;
  ordered_json data;  // machine-readable extras, check-specific
};

ordered_json coeff_array(const IntPolynomial& p) {
  ordered_json arr = ordered_json::array();
  for (const mpz_class& c : p.coefficients()) arr.push_back(c.get_str());
  return arr;
}

CheckResult check_graded_cmd(Workspace& ws) {
  CheckResult res;
  BruhatPoset bp = make_iota_poset(ws.ten, ws.table);
  GradednessReport report = check_graded(bp.poset);
  res.pass = report.graded;
  if (report.graded) {
    res.detail = "every cover has rank difference 1";
  } else {
    res.detail = "found saturated chains of different lengths";
    res.witness.push_back(chain_text(bp.poset, report.chain_short));
    res.witness.push_back(chain_text(bp.poset, report.chain_long));
  }
  return res;
}

CheckResult check_nof_cmd(Workspace& ws) {
  CheckResult res;
  res.pass = has_nof(ws.spec.system, ws.spec.theta);
  if (res.pass) {
    res.detail = "theta flips no odd-labelled edge";
  } else {
    res.detail = "odd flip found";
    for (int s = 0; s < ws.spec.system.rank(); ++s) {
      const int t = ws.spec.theta(s);
      const int m = ws.spec.system.coxeter_matrix().bond(s, t);
      if (t != s && CoxeterMatrix::finite_bond(m) && m % 2 == 1) {
        std::ostringstream osw;
        osw << "m(s" << s + 1 << ", theta(s" << s + 1 << ") = s" << t + 1
            << ") = " << m;
        res.witness.push_back(osw.str());
        break;
      }
    }
  }
  return res;
}

CheckResult check_full_dichotomy_cmd(Workspace& ws, std::int64_t chain_budget) {
  CheckResult res;
  if (!ws.ten.complete())
    fail(errc::bad_input, "full-dichotomy needs the complete enumeration");
  BruhatPoset bp = make_iota_poset(ws.ten, ws.table);
  const int n = bp.poset.size();
  std::int64_t checked = 0;
  for (int u = 0; u < n && res.pass; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v || !bp.poset.leq(u, v)) continue;
      const bool full = is_full(ws.ten, ws.table, bp.enum_index[u], bp.enum_index[v]);
      IntervalHomology ih = interval_homology(bp.poset, u, v, chain_budget);
      const int expected_dim =
          bp.poset.rank(v) - bp.poset.rank(u) - 2;
      const bool ok = full ? (ih.cls == IntervalClass::sphere &&
                              ih.sphere_dim == expected_dim)
                           : ih.cls == IntervalClass::acyclic;
      ++checked;
      if (!ok) {
        res.pass = false;
        std::ostringstream osw;
        osw << "interval (" << (bp.poset.node(u).sexpr.empty() ? "e" : bp.poset.node(u).sexpr)
            << ", " << bp.poset.node(v).sexpr << "): full=" << full << " got ";
        switch (ih.cls) {
          case IntervalClass::sphere: osw << "SPHERE(" << ih.sphere_dim << ")"; break;
          case IntervalClass::acyclic: osw << "ACYCLIC"; break;
          case IntervalClass::other: osw << "OTHER"; break;
        }
        res.witness.push_back(osw.str());
        break;
      }
    }
  std::ostringstream osd;
  osd << checked << " intervals classified"
      << (res.pass ? ": SPHERE iff full, else ACYCLIC" : "");
  res.detail = osd.str();
  return res;
}

CheckResult check_lemma_cover_cmd(Workspace& ws) {
  CheckResult res;
  BruhatPoset bp = make_involution_poset(ws.ten, ws.table);
  std::int64_t checked = 0;
  for (int v = 0; v < bp.poset.size(); ++v) {
    if (ws.ten.at(bp.enum_index[v]).ell_theta != 1) continue;
    ++checked;
    int covered = 0;
    for (int u : bp.poset.lower_covers(v))
      if (ws.ten.in_iota(bp.enum_index[u])) ++covered;
    if (covered > 1) {
      res.pass = false;
      std::ostringstream osw;
      osw << label_of(ws.ten, bp.enum_index[v]) << " covers " << covered
          << " twisted identities";
      res.witness.push_back(osw.str());
      break;
    }
  }
  std::ostringstream osd;
  osd << checked << " elements of twisted absolute length 1 checked";
  res.detail = osd.str();
  return res;
}

CheckResult check_factorization_cmd(Workspace& ws, const Options& opt) {
  CheckResult res;
  FactorizationReport report =
      factors_through(ws.spec.system, ws.spec.theta, Budget{opt.budget_elements});
  res.pass = report.factors;
  std::ostringstream osd;
  osd << "Poin(W) = " << report.poin_w.text() << "; Poin(iota) = "
      << report.poin_iota.text() << "; Poin(Fix) = " << report.poin_fix.text();
  res.detail = osd.str();
  res.data["poin_w"] = coeff_array(report.poin_w);
  res.data["poin_iota"] = coeff_array(report.poin_iota);
  res.data["poin_fix"] = coeff_array(report.poin_fix);
  if (!res.pass) {
    std::ostringstream osw;
    osw << "Poin(W) / Poin(Fix): quotient " << report.quotient.text()
        << ", remainder " << report.remainder.text();
    res.witness.push_back(osw.str());
    res.data["quotient"] = coeff_array(report.quotient);
    res.data["remainder"] = coeff_array(report.remainder);
  }
  return res;
}

CheckResult check_prop51_cmd(Workspace& ws) {
  CheckResult res;
  res.pass = prop51_condition(ws.spec.system, ws.spec.theta);
  res.detail = res.pass ? "m(s, theta(s)) in {1, 2, infinity} for all s"
                        : "condition violated";
  if (!res.pass) {
    for (int s = 0; s < ws.spec.system.rank(); ++s) {
      const int m = ws.spec.system.coxeter_matrix().bond(s, ws.spec.theta(s));
      if (m != 1 && m != 2 && m != CoxeterMatrix::kInfinite) {
        std::ostringstream osw;
        osw << "m(s" << s + 1 << ", s" << ws.spec.theta(s) + 1 << ") = " << m;
        res.witness.push_back(osw.str());
        break;
      }
    }
  }
  return res;
}

CheckResult check_mobius_range_cmd(Workspace& ws) {
  CheckResult res;
  BruhatPoset bp = make_iota_poset(ws.ten, ws.table);
  for (int u = 0; u < bp.poset.size() && res.pass; ++u) {
    const std::vector<long long> mu = mobius_row(bp.poset, u);
    for (int v = 0; v < bp.poset.size(); ++v) {
      if (!bp.poset.leq(u, v)) continue;
      if (mu[v] < -1 || mu[v] > 1) {
        res.pass = false;
        std::ostringstream osw;
        osw << "mu(" << (bp.poset.node(u).sexpr.empty() ? "e" : bp.poset.node(u).sexpr)
            << ", " << bp.poset.node(v).sexpr << ") = " << mu[v];
        res.witness.push_back(osw.str());
        break;
      }
    }
  }
  res.detail = res.pass ? "all values lie in {-1, 0, 1}" : "range exceeded";
  if (!ws.ten.complete()) res.detail += " (truncated evidence only)";
  return res;
}

CheckResult check_maximal_cmd(Workspace& ws) {
  CheckResult res;
  if (!ws.ten.complete())
    fail(errc::bad_input, "maximal-element counts need the complete poset");
  BruhatPoset bp = make_iota_poset(ws.ten, ws.table);
  const std::vector<int> maxima = maximal_elements(bp.poset);

  std::optional<std::size_t> predicted;
  const auto& ft = ws.spec.system.finite_type();
  if (ws.spec.theta.is_identity()) {
    predicted = 1;
  } else if (ft && ft->label.find('x') == std::string::npos) {
    const std::string& label = ft->label;
    // irreducible finite: more than one maximal element iff A_{2m} or
    // I2(2m+1) with the nontrivial automorphism
    auto dihedral_order = [&]() -> std::optional<int> {
      if (label == "A2") return 3;
      if (label == "B2") return 4;
      if (label == "G2") return 6;
      if (label.rfind("I2(", 0) == 0)
        return std::stoi(label.substr(3, label.size() - 4));
      return std::nullopt;
    }();
    if (ws.spec.system.rank() == 2 && dihedral_order) {
      predicted = (*dihedral_order % 2 == 1) ? 2 : 1;
    } else if (label[0] == 'A') {
      const int n = std::stoi(label.substr(1));
      predicted = (n % 2 == 0) ? n / 2 + 1 : 1;
    } else {
      predicted = 1;  // D, E, F with their diagram automorphisms
    }
  }

  std::ostringstream osd;
  osd << maxima.size() << " maximal element(s): ";
  for (std::size_t k = 0; k < maxima.size(); ++k) {
    if (k) osd << ", ";
    const std::string& s = bp.poset.node(maxima[k]).sexpr;
    osd << (s.empty() ? "e" : s);
  }
  if (predicted) {
    osd << " (predicted " << *predicted << ")";
    res.pass = maxima.size() == *predicted;
    if (!res.pass) res.witness.push_back("count differs from the prediction");
  }
  res.detail = osd.str();
  return res;
}

CheckResult check_subword_oracle_cmd(Workspace& ws) {
  CheckResult res;
  if (ws.ten.size() > 200)
    fail(errc::bad_input, "subword oracle check is desk-bounded to 200 elements");
  std::int64_t checked = 0;
  for (int u = 0; u < ws.ten.size() && res.pass; ++u)
    for (int v = 0; v < ws.ten.size(); ++v) {
      const bool lifting = ws.table.leq(u, v);
      const bool brute = subword_check_bruteforce(
          ws.spec.system, ws.spec.theta, ws.ten.at(u).element, ws.ten.at(v).sexpr);
      ++checked;
      if (lifting != brute) {
        res.pass = false;
        std::ostringstream osw;
        osw << "pair (" << label_of(ws.ten, u) << ", " << label_of(ws.ten, v)
            << "): lifting=" << lifting << " subword=" << brute;
        res.witness.push_back(osw.str());
        break;
      }
    }
  std::ostringstream osd;
  osd << checked << " ordered pairs compared against the subword oracle";
  res.detail = osd.str();
  return res;
}

int cmd_check(const Options& opt, std::ostream& out) {
  Workspace ws = make_workspace(opt);
  CheckResult res;
  if (opt.check == "graded")
    res = check_graded_cmd(ws);
  else if (opt.check == "nof")
    res = check_nof_cmd(ws);
  else if (opt.check == "full-dichotomy")
    res = check_full_dichotomy_cmd(ws, opt.budget_chains);
  else if (opt.check == "lemma-cover")
    res = check_lemma_cover_cmd(ws);
  else if (opt.check == "factorization")
    res = check_factorization_cmd(ws, opt);
  else if (opt.check == "prop51")
    res = check_prop51_cmd(ws);
  else if (opt.check == "mobius-range")
    res = check_mobius_range_cmd(ws);
  else if (opt.check == "maximal")
    res = check_maximal_cmd(ws);
  else if (opt.check == "subword-oracle")
    res = check_subword_oracle_cmd(ws);
  else
    fail(errc::bad_input, "unknown check: " + opt.check);

  if (opt.format == "json") {
    ordered_json doc;
    doc["check"] = opt.check;
    doc["group"] = opt.group;
    doc["pass"] = res.pass;
    doc["detail"] = res.detail;
    doc["witness"] = res.witness;
    if (!res.data.empty()) doc["data"] = res.data;
    out << doc.dump(2) << "\n";
  } else {
    out << (res.pass ? "PASS" : "FAIL") << " " << opt.check << " " << opt.group
        << ": " << res.detail << "\n";
    for (const std::string& w : res.witness) out << "  witness: " << w << "\n";
  }
  return res.pass ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact Bruhat-order computations for twisted identities"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub, bool with_set) {
    sub->add_option("--group", opt.group,
                    "preset like A5:flip, D4:swap, affineA2, square(A2), or a "
                    "JSON group file")
        ->required();
    sub->add_option("--theta", opt.theta,
                    "automorphism override: id, flip, swap, or 0-based images "
                    "like 2,1,0");
    sub->add_option("--max-rank", opt.max_rank,
                    "truncation rank (required for infinite groups)");
    sub->add_option("--budget-elements", opt.budget_elements, "element budget");
    sub->add_option("--budget-chains", opt.budget_chains, "chain budget");
    sub->add_option("--format", opt.format, "text | json | dot");
    if (with_set)
      sub->add_option("--set", opt.set, "element set: W, inv (twisted "
                                        "involutions) or iota (twisted "
                                        "identities)");
  };

  CLI::App* enumerate = app.add_subcommand("enumerate", "list elements by rank");
  add_common(enumerate, true);
  CLI::App* poset = app.add_subcommand("poset", "export the Bruhat poset");
  add_common(poset, true);
  CLI::App* check = app.add_subcommand("check", "run a named verification");
  check->add_option("name", opt.check,
                    "graded | nof | full-dichotomy | lemma-cover | "
                    "factorization | prop51 | mobius-range | maximal | "
                    "subword-oracle")
      ->required();
  add_common(check, false);
  CLI::App* homology = app.add_subcommand("homology", "interval homology report");
  add_common(homology, false);
  homology->add_option("--interval", opt.interval,
                       "endpoint S-expressions, e.g. --interval 3 213")
      ->expected(2);

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 3;
  }

  try {
    if (app.got_subcommand(enumerate)) return cmd_enumerate(opt, out);
    if (app.got_subcommand(poset)) return cmd_poset(opt, out);
    if (app.got_subcommand(check)) return cmd_check(opt, out);
    if (app.got_subcommand(homology)) return cmd_homology(opt, out);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_of(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

}  // namespace coxiota::cli
