#include "ergochain/drift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergochain/error.hpp"
#include "ergochain/logmath.hpp"

namespace ergochain {
namespace {

constexpr double kBorderLow = 0.99;
constexpr double kVanishingFactor = 0.5;
constexpr double kDriftSlack = 1e-10;

double rho_bound(double z, double r, double q) {
  return 0.5 * q * (z - 1.0) * (0.5 * (r + 1.0) - 1.0 / z) + 1.0;
}

double log_w(const BivariateFamily& fam, double z, double c, int x, int y) {
  return log_add_exp(x * std::log(z), std::log(c) + log_g(fam, z, y));
}

}  // namespace

double DriftCertificate::L() const { return std::exp(log_L); }

double RgsDriftCertificate::L_rgs() const { return std::exp(log_L_rgs); }

double px_drift_coefficient(const BivariateFamily& fam, double z, int x) {
  if (!(z > 1.0)) throw Error(ErrorCode::BadZ, "drift base z must exceed 1");
  if (x < 2 || x > fam.size()) {
    throw Error(ErrorCode::OutOfSupport, "drift coefficient is defined for 2 <= x <= N");
  }
  const auto [p, q] = fam.birth_death(x);
  return p * (z - 1.0) + q * (1.0 / z - 1.0) + 1.0;
}

double log_px_drift(const BivariateFamily& fam, double z, int x) {
  const auto [p, q] = fam.birth_death(x);
  const double lz = std::log(z);
  double acc = kNegInf;
  if (q > 0.0) acc = log_add_exp(acc, std::log(q) + (x - 1) * lz);
  const double stay = 1.0 - p - q;
  if (stay > 0.0) acc = log_add_exp(acc, std::log(stay) + x * lz);
  if (p > 0.0) acc = log_add_exp(acc, std::log(p) + (x + 1) * lz);
  return acc;
}

double log_g(const BivariateFamily& fam, double z, int y) {
  const double la = fam.log_a(y);
  const double lb = fam.log_b(y);
  return log_add_exp(la, std::log(z) + lb) - log_add_exp(la, lb) + y * std::log(z);
}

TailSurrogates drift_tail_surrogates(const BivariateFamily& fam) {
  const long n = fam.size();
  TailSurrogates s;
  s.first = std::max(2L, n / 2 + 1);
  s.last = 4 * n;
  s.r_hat = 0.0;
  s.q_hat = 1.0;
  const long quarter = std::max(1L, (s.last - s.first + 1) / 4);
  double q_head = 1.0, q_tail = 1.0;
  for (long x = s.first; x <= s.last; ++x) {
    const auto [lp, lq] = log_birth_death(fam.spec(), x);
    const double q = std::exp(lq);
    s.r_hat = std::max(s.r_hat, std::exp(lp - lq));
    s.q_hat = std::min(s.q_hat, q);
    if (x < s.first + quarter) q_head = std::min(q_head, q);
    if (x > s.last - quarter) q_tail = std::min(q_tail, q);
  }
  s.q_vanishing = q_tail < kVanishingFactor * q_head;
  return s;
}

std::vector<double> default_z_grid(double z_max, int points) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  const double log_max = std::log(z_max);
  for (int k = 1; k <= points; ++k) grid.push_back(std::exp(log_max * k / (points + 1)));
  return grid;
}

std::optional<DriftCertificate> find_drift_certificate(
    const BivariateFamily& fam, const std::optional<std::vector<double>>& z_grid) {
  const int n = fam.size();
  if (n < 10) throw Error(ErrorCode::InvalidSpec, "drift search needs N >= 10");

  const TailSurrogates s = drift_tail_surrogates(fam);
  if (!(s.r_hat < 1.0) || !(s.q_hat > 0.0) || s.q_vanishing || s.r_hat >= kBorderLow) {
    return std::nullopt;
  }

  const double z_max = 2.0 / (s.r_hat + 1.0);
  std::vector<double> grid = z_grid ? *z_grid : default_z_grid(z_max);
  std::sort(grid.begin(), grid.end());

  std::optional<double> best_z;
  double best_rho = 1.0;
  for (double z : grid) {
    if (!(z > 1.0 && z < z_max)) continue;
    const double rho = rho_bound(z, s.r_hat, s.q_hat);
    if (rho < best_rho) {
      best_rho = rho;
      best_z = z;
    }
  }
  if (!best_z) return std::nullopt;

  DriftCertificate cert;
  cert.z = *best_z;
  cert.rho = best_rho;
  cert.r_hat = s.r_hat;
  cert.q_hat = s.q_hat;
  cert.n = n;
  cert.x0 = 1;
  for (int x = n; x >= 2; --x) {
    if (px_drift_coefficient(fam, cert.z, x) > cert.rho) {
      cert.x0 = x;
      break;
    }
  }
  cert.log_L = kNegInf;
  for (int x = 1; x <= cert.x0; ++x) cert.log_L = std::max(cert.log_L, log_px_drift(fam, cert.z, x));
  return cert;
}

std::pair<double, double> rgs_c_interval(double p, double lambda) {
  return {p / (1.0 - p), p / (lambda * (1.0 - p))};
}

RgsDriftCertificate lift_to_rgs(const DriftCertificate& base, double p, std::optional<double> c) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::BadScanProbability, "scan probability must lie in (0,1)");
  }
  const double lambda = base.rho;
  const auto [lo, hi] = rgs_c_interval(p, lambda);
  const double chosen = c.value_or(std::sqrt(lo * hi));
  if (!(chosen > lo && chosen < hi)) {
    throw Error(ErrorCode::COutOfRange, "c must lie strictly inside (p/(1-p), p/(lambda(1-p)))");
  }
  RgsDriftCertificate out;
  out.p = p;
  out.c = chosen;
  out.gamma = std::max((1.0 - p) * (chosen * lambda + 1.0), p * (1.0 + chosen) / chosen);
  out.log_L_rgs = std::log((1.0 - p) * chosen) + base.log_L;
  out.base = base;
  return out;
}

DriftCheck verify_drift(const BivariateFamily& fam, const DriftCertificate& cert) {
  DriftCheck check;
  check.max_violation = -std::numeric_limits<double>::infinity();
  const double lz = std::log(cert.z);
  const double log_rho = std::log(cert.rho);
  for (int x = 1; x <= fam.size(); ++x) {
    const double lhs = log_px_drift(fam, cert.z, x);
    const double rhs = log_add_exp(log_rho + x * lz, cert.log_L);
    if (lhs - rhs > check.max_violation) {
      check.max_violation = lhs - rhs;
      check.worst_x = x;
    }
  }
  check.holds = check.max_violation <= kDriftSlack;
  return check;
}

DriftCheck verify_drift(const BivariateFamily& fam, const RgsDriftCertificate& cert) {
  DriftCheck check;
  check.max_violation = -std::numeric_limits<double>::infinity();
  const double z = cert.base.z;
  const double log_gamma = std::log(cert.gamma);
  const double log_p = std::log(cert.p);
  const double log_1mp = std::log1p(-cert.p);
  const int n = fam.size();
  for (int y = 1; y <= n; ++y) {
    for (int x : {y, y + 1}) {
      if (!fam.in_support(x, y)) continue;
      double lhs = kNegInf;
      for (int x_new : {y, y + 1}) {
        const double w = fam.cond_x_given_y(x_new, y);
        if (w > 0.0) lhs = log_add_exp(lhs, log_p + std::log(w) + log_w(fam, z, cert.c, x_new, y));
      }
      for (int y_new : {x - 1, x}) {
        const double w = fam.cond_y_given_x(y_new, x);
        if (w > 0.0) lhs = log_add_exp(lhs, log_1mp + std::log(w) + log_w(fam, z, cert.c, x, y_new));
      }
      const double rhs = log_add_exp(log_gamma + log_w(fam, z, cert.c, x, y), cert.log_L_rgs);
      if (lhs - rhs > check.max_violation) {
        check.max_violation = lhs - rhs;
        check.worst_x = x;
        check.worst_y = y;
      }
    }
  }
  check.holds = check.max_violation <= kDriftSlack;
  return check;
}

}  // namespace ergochain
