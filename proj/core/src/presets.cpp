#include "coxiota/presets.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace coxiota {

namespace {

std::vector<std::vector<int>> blank_matrix(int n) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::vector<std::vector<int>> path_matrix(int n) {
  auto m = blank_matrix(n);
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  return m;
}

bool parse_int(const std::string& text, int* out) {
  if (text.empty()) return false;
  int v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
    if (v > 1000000) return false;
  }
  *out = v;
  return true;
}

struct PresetParse {
  CoxeterSystem system;
  std::string family;
  int n = 0;
  TwistedAutomorphism default_theta;
};

PresetParse parse_preset(const std::string& name);

PresetParse parse_square(const std::string& inner_name) {
  PresetParse inner = parse_preset(inner_name);
  auto [sys, swap] = square_with_swap(inner.system);
  PresetParse out{std::move(sys), "square", inner.system.rank(), swap};
  return out;
}

PresetParse parse_preset(const std::string& name) {
  int n = 0;
  if (name.size() >= 2 && name[0] == 'A' && parse_int(name.substr(1), &n) && n >= 1) {
    CoxeterSystem sys = CoxeterSystem::build(CoxeterMatrix(path_matrix(n)));
    return {std::move(sys), "A", n, TwistedAutomorphism::identity(n)};
  }
  if (name.size() >= 2 && name[0] == 'B' && parse_int(name.substr(1), &n) && n >= 2) {
    auto m = path_matrix(n);
    m[n - 2][n - 1] = m[n - 1][n - 2] = 4;
    CoxeterSystem sys = CoxeterSystem::build(CoxeterMatrix(std::move(m)));
    return {std::move(sys), "B", n, TwistedAutomorphism::identity(n)};
  }
  if (name.size() >= 2 && name[0] == 'D' && parse_int(name.substr(1), &n) && n >= 3) {
    // Fork labels: s1 and s2 hang off s3, then a chain s3 - s4 - ... - sn.
    auto m = blank_matrix(n);
    m[0][2] = m[2][0] = 3;
    m[1][2] = m[2][1] = 3;
    for (int i = 2; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
    CoxeterSystem sys = CoxeterSystem::build(CoxeterMatrix(std::move(m)));
    return {std::move(sys), "D", n, TwistedAutomorphism::identity(n)};
  }
  if (name == "E6") {
    // Chain s1 - s3 - s4 - s5 - s6 with s2 attached to s4.
    auto m = blank_matrix(6);
    auto join = [&m](int a, int b) { m[a][b] = m[b][a] = 3; };
    join(0, 2);
    join(2, 3);
    join(3, 4);
    join(4, 5);
    join(1, 3);
    CoxeterSystem sys = CoxeterSystem::build(CoxeterMatrix(std::move(m)));
    return {std::move(sys), "E", 6, TwistedAutomorphism::identity(6)};
  }
  if (name == "F4") {
    auto m = path_matrix(4);
    m[1][2] = m[2][1] = 4;
    CoxeterSystem sys = CoxeterSystem::build(CoxeterMatrix(std::move(m)));
    return {std::move(sys), "F", 4, TwistedAutomorphism::identity(4)};
  }
  if (name.rfind("I2(", 0) == 0 && name.back() == ')') {
    if (!parse_int(name.substr(3, name.size() - 4), &n) || n < 2)
      fail(errc::bad_input, "bad dihedral preset: " + name);
    auto m = blank_matrix(2);
    m[0][1] = m[1][0] = n;
    CoxeterSystem sys = CoxeterSystem::build(CoxeterMatrix(std::move(m)));
    return {std::move(sys), "I", n, TwistedAutomorphism::identity(2)};
  }
  if (name == "affineA2") {
    auto m = blank_matrix(3);
    m[0][1] = m[1][0] = 3;
    m[0][2] = m[2][0] = 3;
    m[1][2] = m[2][1] = 3;
    CoxeterSystem sys = CoxeterSystem::build(CoxeterMatrix(std::move(m)));
    TwistedAutomorphism theta;
    theta.image = {0, 2, 1};  // s1 fixed, s2 and s3 swapped
    return {std::move(sys), "affineA2", 3, theta};
  }
  if (name.rfind("square(", 0) == 0 && name.back() == ')')
    return parse_square(name.substr(7, name.size() - 8));
  fail(errc::bad_input, "unknown preset: " + name);
}

}  // namespace

TwistedAutomorphism named_theta(const CoxeterSystem& sys,
                                const std::string& family, int n,
                                const std::string& name) {
  if (name == "id") return TwistedAutomorphism::identity(sys.rank());
  if (name != "flip" && name != "swap")
    fail(errc::bad_input, "unknown automorphism name: " + name);

  TwistedAutomorphism theta = TwistedAutomorphism::identity(sys.rank());
  if (family == "A") {
    for (int i = 0; i < n; ++i) theta.image[i] = n - 1 - i;
  } else if (family == "D") {
    theta.image[0] = 1;
    theta.image[1] = 0;
  } else if (family == "E") {
    theta.image = {5, 1, 4, 3, 2, 0};
  } else if (family == "F") {
    theta.image = {3, 2, 1, 0};
  } else if (family == "I") {
    theta.image = {1, 0};
  } else if (family == "affineA2") {
    theta.image = {0, 2, 1};
  } else if (family == "square") {
    for (int i = 0; i < n; ++i) {
      theta.image[i] = n + i;
      theta.image[n + i] = i;
    }
  } else {
    fail(errc::bad_input, "preset family " + family + " has no " + name);
  }
  if (!check_automorphism(sys, theta))
    fail(errc::bad_input, family + ":" + name + " is not an automorphism");
  return theta;
}

GroupSpec load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_input, "cannot open group file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    fail(errc::bad_input, std::string("bad group file JSON: ") + e.what());
  }
  const int n = doc.at("size").get<int>();
  auto m = doc.at("m").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(m.size()) != n)
    fail(errc::bad_input, "group file: size does not match matrix");
  GroupSpec spec{CoxeterSystem::build(CoxeterMatrix(std::move(m))),
                 TwistedAutomorphism::identity(n), path};
  if (doc.contains("theta")) {
    spec.theta.image = doc.at("theta").get<std::vector<int>>();
    if (!check_automorphism(spec.system, spec.theta))
      fail(errc::bad_input, "group file: theta is not a diagram automorphism");
  }
  return spec;
}

GroupSpec resolve_group(const std::string& source, const std::string& theta_spec) {
  std::string base = source, theta_name;
  const auto colon = source.rfind(':');
  // "square(A2):swap" style; a colon inside parentheses is not split
  if (colon != std::string::npos && source.find(')', colon) == std::string::npos) {
    base = source.substr(0, colon);
    theta_name = source.substr(colon + 1);
  }

  GroupSpec spec = [&]() -> GroupSpec {
    if (std::filesystem::exists(base) &&
        !std::filesystem::is_directory(base)) {
      GroupSpec s = load_group_file(base);
      if (!theta_name.empty())
        fail(errc::bad_input, "named automorphisms apply to presets only");
      return s;
    }
    PresetParse p = parse_preset(base);
    GroupSpec s{std::move(p.system), p.default_theta, base};
    if (!theta_name.empty())
      s.theta = named_theta(s.system, p.family, p.n, theta_name);
    return s;
  }();

  if (!theta_spec.empty()) {
    if (theta_spec == "id") {
      spec.theta = TwistedAutomorphism::identity(spec.system.rank());
    } else if (theta_spec == "flip" || theta_spec == "swap") {
      PresetParse p = parse_preset(base);
      spec.theta = named_theta(spec.system, p.family, p.n, theta_spec);
    } else {
      // comma-separated 0-based images
      spec.theta.image.clear();
      std::istringstream is(theta_spec);
      std::string tok;
      while (std::getline(is, tok, ',')) {
        int v = 0;
        if (!parse_int(tok, &v)) fail(errc::bad_input, "bad --theta: " + theta_spec);
        spec.theta.image.push_back(v);
      }
      if (!check_automorphism(spec.system, spec.theta))
        fail(errc::bad_input, "--theta is not a diagram automorphism");
    }
  }

  if (!check_automorphism(spec.system, spec.theta))
    fail(errc::bad_input, "theta is not a diagram automorphism");
  spec.description = source;
  return spec;
}

}  // namespace coxiota
