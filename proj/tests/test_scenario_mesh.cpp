#include "doctest.h"

#include <sstream>

#include "core/commands.hpp"
#include "core/mesh.hpp"
#include "core/report.hpp"
#include "core/scenario.hpp"
#include "helpers.hpp"
#include "json.hpp"

using namespace vf4;
using testutil::kPi;

TEST_CASE("scenario parse and serialize round-trip") {
  const std::string text =
      "# demo scenario\n"
      "construction.kind = ring\n"
      "construction.d = 1.5\n"
      "quad.order = 12\n"
      "field.0.family = radial-bump\n";
  const Scenario s = Scenario::parse(text);
  CHECK(s.get_or("construction.kind", "") == "ring");
  CHECK(s.get_double("construction.d", 0) == 1.5);
  CHECK(s.get_int("quad.order", 0) == 12);
  CHECK(!s.has("missing.key"));

  const Scenario round = Scenario::parse(s.serialize());
  CHECK(round.entries == s.entries);
  CHECK(round.serialize() == s.serialize());

  CHECK_THROWS_AS(Scenario::parse("key_without_equals\n"), std::invalid_argument);
  CHECK_THROWS_AS(Scenario::parse("bad key! = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(Scenario::parse("x = abc\n").get_double("x", 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      Scenario::parse("quad.order = twelve\n").get_int("quad.order", 0),
      std::invalid_argument);
}

TEST_CASE("scenario to constructions and fields") {
  const Scenario ring = Scenario::parse("construction.kind = ring\n");
  CHECK(mass(make_construction(ring).varifold, 0, 1e18) ==
        doctest::Approx(kPi));

  const Scenario v00 = Scenario::parse(
      "construction.kind = v00\nconstruction.r1 = 0\nconstruction.r2 = 3\n");
  CHECK(mass(make_construction(v00).varifold, 0, 2.0) ==
        doctest::Approx(4 * kPi));

  const Scenario layer = Scenario::parse(
      "construction.kind = layer\nconstruction.system = B\n"
      "construction.epsilon = 0.3\nconstruction.tail_rel = 1e-6\n");
  const auto built = make_construction(layer);
  CHECK(mass(built.varifold, 0, 1e18) > 0);

  const Scenario full = Scenario::parse(
      "construction.kind = full_nonconical\nconstruction.window = 3\n");
  CHECK(make_construction(full).full.has_value());

  CHECK_THROWS_AS(
      make_construction(Scenario::parse("construction.kind = bogus\n")),
      std::invalid_argument);

  const Scenario fields = Scenario::parse(
      "field.0.family = radial-bump\nfield.0.r_in = 0.5\nfield.0.r_out = 1\n"
      "field.1.family = directional-bump\nfield.1.dir2 = 1\n"
      "field.2.family = polynomial-bump\nfield.2.term.0 = 1 1 0 0 0 0\n");
  std::vector<std::string> names;
  const auto fs = make_fields(fields, &names);
  REQUIRE(fs.size() == 3);
  CHECK(fs[0].support_radius() == 1.0);
  CHECK(names[1] == "field.1");
  CHECK(fs[2].family() == TestVectorField::Family::PolynomialBump);
}

TEST_CASE("mesh export grid, norms and seam") {
  MeshSpec spec;
  spec.d = 1.0;
  spec.alpha0 = 0.0;
  spec.t1 = -kPi / 8;
  spec.t2 = kPi / 8;
  spec.res_alpha = 64;
  spec.res_beta = 64;
  spec.projection = MeshProjection::None;
  const std::string obj = export_mesh(spec);

  std::istringstream in(obj);
  std::string line;
  std::vector<Vec4> verts;
  int faces = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v4 ", 0) == 0) {
      Vec4 v;
      std::istringstream ls(line.substr(3));
      ls >> v[0] >> v[1] >> v[2] >> v[3];
      verts.push_back(v);
    } else if (line.rfind("f ", 0) == 0) {
      ++faces;
    }
  }
  CHECK(verts.size() == 65 * 65);
  CHECK(faces == 64 * 64);

  // row radii match the closed-form profile, seam columns coincide
  const SurfaceParams p(1.0, 0.0);
  for (int i = 0; i <= 64; ++i) {
    const double alpha = spec.t1 + (spec.t2 - spec.t1) * i / 64;
    const double r = profile(p, alpha).r;
    for (int j = 0; j <= 64; ++j)
      CHECK(std::abs(verts[i * 65 + j].norm() - r) <= 1e-12 * r);
    CHECK((verts[i * 65 + 0] - verts[i * 65 + 64]).norm() == 0.0);
  }

  spec.projection = MeshProjection::DropAxis;
  const std::string obj3 = export_mesh(spec);
  CHECK(obj3.find("v4 ") == std::string::npos);

  spec.projection = MeshProjection::Stereographic;
  CHECK(!export_mesh(spec).empty());

  MeshSpec bad = spec;
  bad.t2 = kPi;  // outside the profile domain
  CHECK_THROWS_AS(export_mesh(bad), std::domain_error);
  bad = spec;
  bad.res_alpha = 0;
  CHECK_THROWS_AS(export_mesh(bad), std::domain_error);
}

TEST_CASE("reports are machine-readable and deterministic") {
  Report rep;
  rep.command = "demo";
  rep.add("alpha", 1.0 / 3.0, 0.5, true, "note");
  rep.add("beta", 2e-17, 1e-16, true);
  const std::string j1 = rep.to_json();
  const auto parsed = nlohmann::json::parse(j1);
  CHECK(parsed["pass"] == true);
  CHECK(parsed["checks"].size() == 2);
  CHECK(rep.to_json() == j1);
  CHECK(rep.all_pass());
  rep.add("gamma", 2.0, 1.0, false);
  CHECK(!rep.all_pass());
  CHECK(rep.to_text().find("FAIL") != std::string::npos);
}

TEST_CASE("command layer") {
  // mass profile of the disk-extended averaged planes: ratio is pi
  const std::string csv = cmd_mass_profile(
      Scenario::parse("construction.kind = v00\nconstruction.r1 = 0\n"
                      "construction.r2 = 8\nconstruction.k = 4\n"),
      0.5, 2.0, 4);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("r,mass,ratio,lower_band,upper_band", 0) == 0);
  std::string row;
  int rows = 0;
  while (std::getline(in, row)) {
    if (row.empty() || row == "\r") continue;
    const auto c1 = row.find(','), c2 = row.find(',', row.find(',') + 1);
    const double ratio = std::stod(row.substr(c2 + 1));
    CHECK(ratio == doctest::Approx(kPi).epsilon(1e-12));
    ++rows;
  }
  CHECK(rows == 4);
  CHECK_THROWS_AS(cmd_mass_profile(Scenario::parse(""), 0.5, 2.0, 0),
                  std::domain_error);

  // blow-up command at lambda = 1 reproduces the base masses; repeated
  // runs give byte-identical numeric fields
  const Scenario ring_s = Scenario::parse("construction.kind = ring\n");
  const Report blow = cmd_blowup(ring_s, 1.0);
  CHECK(blow.all_pass());
  const Report again = cmd_blowup(ring_s, 1.0);
  auto strip_time = [](const Report& r) {
    std::ostringstream out;
    for (const auto& chk : r.checks)
      out << chk.name << '|' << format_double(chk.value) << '|'
          << format_double(chk.bound) << '|' << chk.pass << '\n';
    return out.str();
  };
  CHECK(strip_time(blow) == strip_time(again));

  // variation on a stationary family passes, on a lone mini-layer fails
  const Report good = cmd_variation(
      Scenario::parse("construction.kind = layer\nconstruction.epsilon = 0.3\n"
                      "construction.tail_rel = 1e-6\n"
                      "field.0.family = radial-bump\n"
                      "field.0.r_in = 1.4\nfield.0.r_out = 2.6\n"),
      0);
  CHECK(good.all_pass());
  const Report lone = cmd_variation(
      Scenario::parse("construction.kind = mini_layer\nconstruction.k = 24\n"
                      "construction.gamma = 0.6\nconstruction.r2 = 1.0\n"
                      "field.0.family = radial-bump\n"
                      "field.0.r_in = 0.7\nfield.0.r_out = 1.1\n"),
      0);
  CHECK(!lone.all_pass());
}
