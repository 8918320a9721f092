#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ergochain/family.hpp"

namespace ergochain {

/// Witness for P_X V <= rho V + L with V(x) = z^x.
struct DriftCertificate {
  double z = 1.0;
  double rho = 1.0;
  double log_L = 0.0;  // L can overflow for long truncations; kept in log form
  int x0 = 1;
  double r_hat = 0.0;  // limsup surrogate of p_x / q_x
  double q_hat = 0.0;  // liminf surrogate of q_x
  int n = 0;           // truncation the certificate was built for

  double L() const;
  bool operator==(const DriftCertificate&) const = default;
};

/// Witness for P_RGS W <= gamma W + L_rgs with W(x, y) = V(x) + c G(y).
struct RgsDriftCertificate {
  double p = 0.5;
  double c = 1.0;
  double gamma = 1.0;
  double log_L_rgs = 0.0;
  DriftCertificate base;

  double L_rgs() const;
  bool operator==(const RgsDriftCertificate&) const = default;
};

/// Tail surrogates for the limsup of p_x / q_x and the liminf of q_x.
struct TailSurrogates {
  double r_hat = 0.0;
  double q_hat = 0.0;
  long first = 0;  // index window [first, last]
  long last = 0;
  // min q over the last quarter of the window is below half the min over the
  // first quarter, so the window minimum overstates liminf q_x
  bool q_vanishing = false;
};

/// Multiplicative drift coefficient p_x (z - 1) + q_x (1/z - 1) + 1 of V(x).
/// Throws BadZ when z <= 1 and OutOfSupport unless 2 <= x <= N.
double px_drift_coefficient(const BivariateFamily& fam, double z, int x);

/// Max of p_x / q_x and min of q_x over x in [floor(N/2) + 1, 4N]. The
/// sequences are evaluated untruncated, which agrees with the family for
/// x <= N - 1 and keeps the boundary row x = N out of the estimate.
TailSurrogates drift_tail_surrogates(const BivariateFamily& fam);

/// Default grid: 64 geometric points strictly inside (1, z_max).
std::vector<double> default_z_grid(double z_max, int points = 64);

/// Searches the z grid for the smallest rho. Returns nullopt when the tail
/// surrogates fail the drift hypotheses (r_hat >= 1, q_hat <= 0 or q_x
/// visibly decaying to zero), when
/// r_hat falls in the undecidable band [0.99, 1.01], or when no grid point is
/// admissible. Requires N >= 10.
std::optional<DriftCertificate> find_drift_certificate(
    const BivariateFamily& fam, const std::optional<std::vector<double>>& z_grid = std::nullopt);

/// Admissible open interval for c given p and the base rate lambda.
std::pair<double, double> rgs_c_interval(double p, double lambda);

/// Lifts a marginal certificate to the random scan. Default c is the
/// geometric mean of the admissible interval. Throws BadScanProbability or
/// COutOfRange.
RgsDriftCertificate lift_to_rgs(const DriftCertificate& base, double p,
                                std::optional<double> c = std::nullopt);

struct DriftCheck {
  double max_violation = 0.0;  // max over states of log(LHS) - log(RHS)
  bool holds = false;
  int worst_x = 0;
  int worst_y = 0;
};

/// Exhaustive log-space check of the drift inequality at every state.
DriftCheck verify_drift(const BivariateFamily& fam, const DriftCertificate& cert);
DriftCheck verify_drift(const BivariateFamily& fam, const RgsDriftCertificate& cert);

/// log P_X V(x) with V(x) = z^x, by direct summation over the kernel row.
double log_px_drift(const BivariateFamily& fam, double z, int x);
/// log G(y) with G(y) = E[V(X) | Y = y].
double log_g(const BivariateFamily& fam, double z, int y);

}  // namespace ergochain
