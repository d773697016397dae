#pragma once

#include <string>
#include <vector>

#include "constructions.hpp"

// Evidence pipeline: density ratios against the certified bands,
// stationarity residuals against certified bounds, blow-up sampling, band
// classification of the support, and the non-conicity / distinct-tangent
// certificates.  Certificates are finite-scale numerical evidence; weak-*
// convergence of the blow-ups is not certified.

namespace vf4 {

struct DensityRow {
  double radius;
  double ratio;        // mass(A_0^r) / r^2
  double lower, upper; // certified band from the shell estimates
  double allowance;    // truncation slack: omitted mass below the window / r^2
  int shell;           // band shell index used
  bool pass;           // lower - allowance <= ratio <= upper
};

struct DensityProfile {
  std::vector<DensityRow> rows;
  double limit_estimate;  // ratio at the smallest radius
  double theta_lo, theta_hi;  // C^inf bracket times pi
};

DensityProfile density_profile(const FullVarifold& v,
                               const std::vector<double>& radii);

struct StationarityRow {
  std::string field;
  int truncation;      // shells -N..m kept
  double residual;     // |delta V_m (X)|
  double quad_error;
  double tail_bound;   // c1(X) * omitted mass within the support
  double boundary_bound;  // decay term C^(m+1) 2 pi R1(m)^2 sup|DX|
  double bound;        // sum of the three
  bool pass;
};

std::vector<StationarityRow> stationarity_suite(
    const FullVarifold& v, const std::vector<TestVectorField>& fields,
    const std::vector<std::string>& field_names,
    const std::vector<int>& truncations, const QuadratureSpec& spec);

std::vector<VarifoldSum> blowup_sample(const VarifoldSum& v, const Vec4& x0,
                                       const std::vector<double>& lambdas);

struct BandReport {
  double s1 = 0, s2 = 0;
  BandKind kind = BandKind::J13;
  std::vector<double> eps_grid;
  std::vector<double> mass_in_band;  // node mass with achieved eps <= grid value
  double total_mass = 0;             // total node mass
  double closed_mass = 0;            // closed-form mass of the restriction
};

/// Mass-weighted fraction of the support passing band membership per eps.
BandReport band_classify(const VarifoldSum& v, double s1, double s2,
                         BandKind kind, const std::vector<double>& eps_grid,
                         int res = 8);

enum class Verdict {
  NonConicalEvidence,
  DistinctTangentsEvidence,
  Inconclusive,
};

std::string verdict_name(Verdict v);

struct ConicityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  double scale_a = 0, scale_b = 0;
  double epsilon_used = 0;
  double epsilon0 = 0;
  double mass_a = 0, mass_b = 0;
  double mass_floor = 0;
  BandReport a_j13, a_j12, b_j13, b_j12;
};

/// Blow-ups of the nonconical example at lambda_i = 4^-i and lambda_i / 2:
/// the unit annulus A_1^2 must be J13-banded at the first scale and
/// J12-banded at the second, with mass >= 0.99 (3 pi / 2) C^inf at both.
ConicityCertificate nonconical_certificate(const FullVarifold& v, int i,
                                           double epsilon0, int res = 8);

/// Conical-variant blow-ups at lambda_i = i R1^(2i) and i R1^(2i+1); both
/// scales must carry the mass floor on A_1^2 with disjoint band classes.
ConicityCertificate distinct_tangents_certificate(const FullVarifold& v, int i,
                                                  double epsilon0, int res = 8);

/// Control: a purely planar conical varifold (V00 extended over 0..inf)
/// classifies identically at both scales, so no evidence is produced.
ConicityCertificate planar_control_certificate(double epsilon0, int res = 8);

}  // namespace vf4
