#include "scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vf4 {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

bool Scenario::has(const std::string& key) const { return get(key).has_value(); }

std::optional<std::string> Scenario::get(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  return std::nullopt;
}

std::string Scenario::get_or(const std::string& key,
                             const std::string& fallback) const {
  auto v = get(key);
  return v ? *v : fallback;
}

double Scenario::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    size_t pos = 0;
    const double x = std::stod(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument(*v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("scenario: bad numeric value for " + key +
                                ": '" + *v + "'");
  }
}

int Scenario::get_int(const std::string& key, int fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    size_t pos = 0;
    const int x = std::stoi(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument(*v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("scenario: bad integer value for " + key +
                                ": '" + *v + "'");
  }
}

void Scenario::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries)
    if (k == key) {
      v = value;
      return;
    }
  entries.emplace_back(key, value);
}

Scenario Scenario::parse(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("scenario: line " + std::to_string(lineno) +
                                  " has no '='");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("scenario: line " + std::to_string(lineno) +
                                  " has an empty key");
    for (char c : key)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
            c == '_' || c == '-'))
        throw std::invalid_argument("scenario: line " + std::to_string(lineno) +
                                    " has an invalid key character");
    s.entries.emplace_back(key, value);
  }
  return s;
}

std::string Scenario::serialize() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries) out << k << " = " << v << "\n";
  return out.str();
}

BuiltConstruction make_construction(const Scenario& s) {
  const std::string kind = s.get_or("construction.kind", "ring");
  BuiltConstruction out;
  out.kind = kind;
  if (kind == "ring") {
    out.varifold = build_ring(s.get_double("construction.d", 1.0),
                              s.get_double("construction.alpha0", 0.0),
                              s.get_double("construction.t1", 0.0),
                              s.get_double("construction.t2", std::numbers::pi / 8));
    return out;
  }
  if (kind == "v00") {
    out.varifold = build_v00(s.get_double("construction.r1", 1.0),
                             s.get_double("construction.r2", 2.0),
                             s.get_int("construction.k", 8));
    return out;
  }
  if (kind == "mini_layer") {
    const auto p = MiniLayerParams::create(
        s.get_int("construction.k", 24), s.get_double("construction.gamma", 0.6),
        s.get_double("construction.r2", 1.0));
    out.varifold =
        build_mini_layer(s.get_int("construction.which", 1), p,
                         s.get_int("construction.swap23", 0) != 0);
    return out;
  }
  if (kind == "layer") {
    LayerParams lp;
    lp.R1 = s.get_double("construction.R1", 1.0);
    lp.R2 = s.get_double("construction.R2", 2.0);
    lp.R3 = s.get_double("construction.R3", 3.0);
    lp.R4 = s.get_double("construction.R4", 4.0);
    lp.epsilon = s.get_double("construction.epsilon", 0.2);
    lp.tail_rel = s.get_double("construction.tail_rel", 1e-8);
    const std::string sys = s.get_or("construction.system", "A");
    out.varifold = build_layer(sys.empty() ? 'A' : sys[0], lp).varifold;
    return out;
  }
  if (kind == "nonrectifiable") {
    NonRectParams np;
    const std::string gen = s.get_or("construction.generator", "pow2");
    if (gen == "pow2")
      np.generator = RadiiGenerator::Pow2;
    else if (gen == "pow2pow")
      np.generator = RadiiGenerator::Pow2Pow;
    else
      throw std::invalid_argument("scenario: unknown generator " + gen);
    np.i_min = s.get_int("construction.i_min", -8);
    np.i_max = s.get_int("construction.i_max", 8);
    out.varifold = build_nonrectifiable(np);
    return out;
  }
  if (kind == "full_nonconical" || kind == "full_conical") {
    FullParams fp;
    fp.variant = kind == "full_nonconical" ? FullVariant::Nonconical
                                           : FullVariant::Conical;
    fp.window = s.get_int("construction.window", 12);
    fp.layer_tail_rel = s.get_double("construction.tail_rel", 1e-8);
    out.full = build_full(fp);
    out.varifold = out.full->varifold;
    return out;
  }
  throw std::invalid_argument("scenario: unknown construction.kind '" + kind + "'");
}

TestVectorField make_field(const Scenario& s, const std::string& prefix) {
  const std::string family = s.get_or(prefix + ".family", "radial-bump");
  const double r_in = s.get_double(prefix + ".r_in", 0.5);
  const double r_out = s.get_double(prefix + ".r_out", 2.0);
  if (family == "radial-bump") return TestVectorField::radial_bump(r_in, r_out);
  if (family == "directional-bump") {
    const Vec4 dir(s.get_double(prefix + ".dir1", 1.0),
                   s.get_double(prefix + ".dir2", 0.0),
                   s.get_double(prefix + ".dir3", 0.0),
                   s.get_double(prefix + ".dir4", 0.0));
    return TestVectorField::directional_bump(r_in, r_out, dir);
  }
  if (family == "polynomial-bump") {
    // terms given as `<prefix>.term.<i> = coef e1 e2 e3 e4 component`
    std::vector<PolyTerm> terms;
    for (int i = 0;; ++i) {
      auto raw = s.get(prefix + ".term." + std::to_string(i));
      if (!raw) break;
      std::istringstream in(*raw);
      PolyTerm t{};
      if (!(in >> t.coef >> t.expo[0] >> t.expo[1] >> t.expo[2] >> t.expo[3] >>
            t.component))
        throw std::invalid_argument("scenario: bad polynomial term " + *raw);
      terms.push_back(t);
    }
    if (terms.empty()) terms.push_back(PolyTerm{1.0, {0, 0, 0, 0}, 0});
    return TestVectorField::polynomial_bump(r_in, r_out, std::move(terms));
  }
  throw std::invalid_argument("scenario: unknown field family '" + family + "'");
}

std::vector<TestVectorField> make_fields(const Scenario& s,
                                         std::vector<std::string>* names) {
  std::vector<TestVectorField> out;
  for (int i = 0;; ++i) {
    const std::string prefix = "field." + std::to_string(i);
    bool present = false;
    for (const auto& [k, v] : s.entries)
      if (k.rfind(prefix + ".", 0) == 0) present = true;
    if (!present) break;
    out.push_back(make_field(s, prefix));
    if (names) names->push_back(prefix);
  }
  return out;
}

QuadratureSpec make_quad(const Scenario& s) {
  QuadratureSpec q;
  q.order = s.get_int("quad.order", q.order);
  q.subdivisions = s.get_int("quad.subdivisions", q.subdivisions);
  q.adaptive = s.get_int("quad.adaptive", q.adaptive ? 1 : 0) != 0;
  q.target_rel_error = s.get_double("quad.target_rel_error", q.target_rel_error);
  q.max_depth = s.get_int("quad.max_depth", q.max_depth);
  q.circle_nodes = s.get_int("quad.circle_nodes", q.circle_nodes);
  q.orbit_exact_limit = s.get_int("quad.orbit_exact_limit", q.orbit_exact_limit);
  q.orbit_min_nodes = s.get_int("quad.orbit_min_nodes", q.orbit_min_nodes);
  if (q.order < 2 || q.subdivisions < 1)
    throw std::invalid_argument("scenario: quad.order >= 2 and subdivisions >= 1");
  return q;
}

}  // namespace vf4
