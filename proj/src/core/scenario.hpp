#pragma once

#include <optional>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "constructions.hpp"

// Flat key-value scenario files with dotted section keys, one `key = value`
// per line, `#` comments.  parse(serialize(s)) == s; unknown keys are kept.

namespace vf4 {

struct Scenario {
  std::vector<std::pair<std::string, std::string>> entries;

  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  void set(const std::string& key, const std::string& value);

  static Scenario parse(const std::string& text);  // throws on malformed lines
  std::string serialize() const;
};

/// A built construction together with the optional shell metadata needed by
/// the profile/certificate commands.
struct BuiltConstruction {
  std::string kind;
  VarifoldSum varifold;
  std::optional<FullVarifold> full;  // set for full_* kinds
};

/// Builds the construction named by `construction.kind`: ring, v00,
/// mini_layer, layer, nonrectifiable, full_nonconical, full_conical.
BuiltConstruction make_construction(const Scenario& s);

/// Field from keys under `prefix` (family, r_in, r_out, direction, ...).
TestVectorField make_field(const Scenario& s, const std::string& prefix);

/// All fields field.0 .. field.N in order; empty when none are given.
std::vector<TestVectorField> make_fields(const Scenario& s,
                                         std::vector<std::string>* names);

QuadratureSpec make_quad(const Scenario& s);

}  // namespace vf4
