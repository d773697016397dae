#include "report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace vf4 {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Report::add(const std::string& name, double value, double bound, bool pass,
                 const std::string& note) {
  checks.push_back(Check{name, value, bound, pass, note});
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "# " << command << "\n";
  for (const auto& c : checks) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << c.name
        << "  value=" << format_double(c.value)
        << "  bound=" << format_double(c.bound);
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
  }
  out << (all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return out.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["scenario"] = scenario_echo;
  j["elapsed_seconds"] = format_double(elapsed_seconds);
  j["pass"] = all_pass();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["value"] = format_double(c.value);
    jc["bound"] = format_double(c.bound);
    jc["pass"] = c.pass;
    if (!c.note.empty()) jc["note"] = c.note;
    arr.push_back(jc);
  }
  j["checks"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace vf4
