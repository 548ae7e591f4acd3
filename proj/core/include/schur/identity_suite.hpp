#pragma once

// Residuals of the integral identities on one profile, and their behaviour
// under grid doubling.

#include <cstddef>
#include <string>
#include <vector>

#include "schur/metric_families.hpp"
#include "schur/radial_geometry.hpp"

namespace schur {

struct IdentityResiduals {
  double split = 0.0;
  double bochner = 0.0;
  double traceless_hessian = 0.0;
  double weak_bianchi = 0.0;
  double poisson_roundtrip = 0.0;  // manufactured solution u -> lap u -> solve -> u
  double poisson_equation = 0.0;   // stencil lap f - (R - Rbar), relative to the largest term

  double worst() const;
};

/// Test functions are zonal_test_function(profile, k) for k = 1..max_k.
IdentityResiduals identity_residuals(const RadialProfile& profile, int max_k = 8);

struct IdentityEntry {
  std::string name;
  double coarse = 0.0;  // residual at N
  double fine = 0.0;    // residual at 2N
  double order = 0.0;   // log2(coarse / fine)
  bool converged = false;  // order >= min_order, or fine at the roundoff floor; sampled input skips doubling
  bool within_tol = false; // coarse <= tol
};

struct IdentitySuiteOptions {
  double tol = 1e-6;
  double min_order = 3.0;
  double roundoff_floor = 1e-9;  // raised to eps (2N)^2 for second-derivative stencils
  int max_k = 8;
};

struct IdentitySuite {
  std::string family;
  int n = 0;
  std::size_t intervals = 0;
  std::vector<IdentityEntry> entries;

  bool passed() const;
};

IdentitySuite identity_suite(const FamilySpec& spec, std::size_t intervals,
                             const IdentitySuiteOptions& options = {});

}  // namespace schur
