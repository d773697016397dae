#pragma once

#include <string>
#include <vector>

namespace vf4 {

// Machine-readable check report.  Numeric fields are printed with %.17g so
// identical runs produce byte-identical output.

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string note;
};

struct Report {
  std::string command;
  std::string scenario_echo;
  std::vector<Check> checks;
  double elapsed_seconds = 0.0;

  bool all_pass() const;
  void add(const std::string& name, double value, double bound, bool pass,
           const std::string& note = "");
  std::string to_text() const;
  std::string to_json() const;
};

std::string format_double(double v);

}  // namespace vf4
