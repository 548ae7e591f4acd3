#pragma once

// Constructors for the admissible radial profiles: round spheres, conformal
// zonal perturbations (1 + t f) of the unit sphere, and two round caps joined
// by a small catenoid-like neck.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "schur/radial_geometry.hpp"

namespace schur {

RadialProfile round_profile(int n, double radius = 1.0,
                            std::size_t intervals = RadialProfile::kDefaultIntervals);

/// The metric (1 + t f) sigma with f the k-th zonal harmonic (unit L2 norm on
/// the round sphere), in arclength gauge.
struct ConformalProfile {
  RadialProfile profile;
  int k = 0;
  double t = 0.0;
  double factor_min = 1.0;    // min over the sphere of 1 + t f
  std::vector<double> theta;  // polar angle of every grid node
};

/// Throws std::invalid_argument unless |t| max|f| < 0.5.
ConformalProfile conformal_zonal(int n, int k, double t,
                                 std::size_t intervals = RadialProfile::kDefaultIntervals);

/// Transition function used across the cap/neck joints.
enum class BlendKind {
  smooth,   // exp(-1/x) based, C-infinity
  quintic,  // 6x^5 - 15x^4 + 10x^3, C2
};

struct NeckSpec {
  int n = 5;
  double eps = 0.1;
  double r1 = 1.0;
  double r2 = 2.0;
  double blend_width = 0.0;  // 0 selects 1.5 eps
  BlendKind blend = BlendKind::smooth;
};

/// Where the pieces of a neck profile sit along the axis.
struct NeckLayout {
  double length = 0.0;
  double waist_s = 0.0;        // centre of the cosh neck
  double joint1_s = 0.0;       // tangency of cap 1 and neck
  double joint2_s = 0.0;       // tangency of neck and cap 2
  double blend_width = 0.0;
  double cap1_angle = 0.0;     // polar angle of cap 1 kept, in (pi/2, pi)
  double cap2_angle = 0.0;
  double neck_begin() const noexcept { return joint1_s - 0.5 * blend_width; }
  double neck_end() const noexcept { return joint2_s + 0.5 * blend_width; }
};

struct NeckProfile {
  RadialProfile profile;
  NeckSpec spec;
  NeckLayout layout;
  double waist = 0.0;  // min of phi over the neck region
};

/// Checks the NeckSpec invariants and returns the joint layout. Throws
/// std::invalid_argument naming every violated constraint.
NeckLayout neck_layout(const NeckSpec& spec);

NeckProfile neck(const NeckSpec& spec, std::size_t intervals = RadialProfile::kDefaultIntervals);

/// int over the neck region of |Ric°|^2 dvol.
double neck_rico_integral(const NeckProfile& neck);

struct RoundSpec {
  int n = 3;
  double radius = 1.0;
};

struct ConformalSpec {
  int n = 3;
  int k = 1;
  double t = 0.0;
};

struct SamplesSpec {
  int n = 3;
  double length = 0.0;
  std::vector<double> phi;
};

using FamilySpec = std::variant<RoundSpec, ConformalSpec, NeckSpec, SamplesSpec>;

std::string family_name(const FamilySpec& spec);
int family_dimension(const FamilySpec& spec);

/// Builds the profile; samples specs keep their own grid and ignore `intervals`.
RadialProfile build_profile(const FamilySpec& spec,
                            std::size_t intervals = RadialProfile::kDefaultIntervals);

}  // namespace schur
