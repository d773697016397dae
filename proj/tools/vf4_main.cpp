// Command-line harness for the varifold verification engine.  Everything
// goes through the C API in vf4/vf4.h; scenario files plus a few flags
// select the construction, quadrature and outputs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "vf4/vf4.h"

namespace {

struct Options {
  std::string scenario_path;
  std::string out_path;
  int quad_order = 0;
  double quad_tol = 0.0;
  int truncation = 0;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--scenario", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// flags override the corresponding scenario keys by appending lines
std::string scenario_text(const Options& opt) {
  std::string text;
  if (!opt.scenario_path.empty()) text = read_file(opt.scenario_path);
  if (opt.quad_order > 0)
    text += "\nquad.order = " + std::to_string(opt.quad_order) + "\n";
  if (opt.quad_tol > 0) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", opt.quad_tol);
    text += std::string("\nquad.target_rel_error = ") + buf + "\n";
  }
  return text;
}

int emit(const Options& opt, const char* text) {
  if (!text) return 0;
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << opt.out_path << "\n";
      return 3;
    }
    out << text;
  }
  return 0;
}

int status_to_exit(vf4_status st) {
  switch (st) {
    case VF4_OK:
      return 0;
    case VF4_ERR_CHECK:
      return 1;
    case VF4_ERR_PARSE:
      return 2;
    case VF4_ERR_DOMAIN:
      return 3;
    default:
      return 4;
  }
}

int finish(const Options& opt, vf4_status st, char* text) {
  const int ec = emit(opt, text);
  vf4_string_free(text);
  if (st != VF4_OK) std::cerr << "error: " << vf4_last_error() << "\n";
  return ec != 0 ? ec : status_to_exit(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stationary 2-varifold constructions in R^4: verification, "
               "profiles, blow-ups, certificates and mesh export"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opt;
  app.add_option("--scenario", opt.scenario_path, "scenario file (key = value lines)");
  app.add_option("--out", opt.out_path, "output path (default: stdout)");
  app.add_option("--quad-order", opt.quad_order, "Gauss-Legendre order override");
  app.add_option("--quad-tol", opt.quad_tol, "quadrature relative error target");
  app.add_option("--truncation", opt.truncation, "truncation index override");
  app.add_flag("--json", opt.json, "emit reports as JSON");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a lemma verification suite");
  verify->add_option("--suite", suite,
                     "all|geom|surface|ring|minilayer|layer|full");

  double r_min = 0.5, r_max = 2.0;
  int steps = 16;
  auto* prof = app.add_subcommand("mass-profile", "mass/density CSV profile");
  prof->add_option("--r-min", r_min, "smallest radius");
  prof->add_option("--r-max", r_max, "largest radius");
  prof->add_option("--steps", steps, "number of rows");

  auto* vari = app.add_subcommand("variation", "first-variation residuals");

  double lambda = 1.0;
  auto* blow = app.add_subcommand("blowup", "origin blow-up scaling check");
  blow->add_option("--lambda", lambda, "blow-up scale");

  int index = 3;
  auto* cert = app.add_subcommand("certify", "tangent-cone certificates");
  cert->add_option("--index", index, "blow-up index i");

  auto* mesh = app.add_subcommand("export-mesh", "ring mesh as OBJ");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string text;
  try {
    text = scenario_text(opt);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  char* out = nullptr;
  int pass = 0;
  vf4_status st = VF4_ERR_INTERNAL;
  if (verify->parsed()) {
    st = vf4_cmd_verify(suite.c_str(), text.c_str(), opt.json ? 1 : 0, &out,
                        &pass);
  } else if (prof->parsed()) {
    st = vf4_cmd_mass_profile(text.c_str(), r_min, r_max, steps, &out);
  } else if (vari->parsed()) {
    st = vf4_cmd_variation(text.c_str(), opt.truncation, opt.json ? 1 : 0, &out,
                           &pass);
  } else if (blow->parsed()) {
    st = vf4_cmd_blowup(text.c_str(), lambda, opt.json ? 1 : 0, &out, &pass);
  } else if (cert->parsed()) {
    st = vf4_cmd_certify(text.c_str(), index, opt.json ? 1 : 0, &out, &pass);
  } else if (mesh->parsed()) {
    st = vf4_cmd_export_mesh(text.c_str(), &out);
  }
  return finish(opt, st, out);
}
