#include "ergochain/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "ergochain/error.hpp"

namespace ergochain {
namespace {

constexpr double kTvFloor = 1e-13;
constexpr int kMinFitPoints = 5;

}  // namespace

void TransitionMatrix::push_row(std::vector<Entry> row) {
  std::sort(row.begin(), row.end(), [](const Entry& l, const Entry& r) { return l.col < r.col; });
  for (const Entry& e : row) {
    if (e.value == 0.0) continue;
    if (entries_.size() > row_ptr_.back() && entries_.back().col == e.col) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(e);
    }
  }
  row_ptr_.push_back(entries_.size());
}

double TransitionMatrix::at(std::size_t i, std::size_t j) const {
  for (const Entry& e : row(i)) {
    if (e.col == j) return e.value;
  }
  return 0.0;
}

std::optional<std::size_t> TransitionMatrix::index_of(State s) const {
  if (kind_ == ChainKind::MarginalX) {
    if (s.x < 1 || s.x > n_) return std::nullopt;
    return static_cast<std::size_t>(s.x - 1);
  }
  const bool on_support = s.y >= 1 && s.y <= n_ && (s.x == s.y || (s.x == s.y + 1 && s.y < n_));
  if (!on_support) return std::nullopt;
  return staircase_index(s);
}

std::vector<double> TransitionMatrix::left_multiply(std::span<const double> v) const {
  std::vector<double> out(size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    if (v[i] == 0.0) continue;
    for (const Entry& e : row(i)) out[e.col] += v[i] * e.value;
  }
  return out;
}

std::vector<double> TransitionMatrix::right_multiply(std::span<const double> f) const {
  std::vector<double> out(size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    double acc = 0.0;
    for (const Entry& e : row(i)) acc += e.value * f[e.col];
    out[i] = acc;
  }
  return out;
}

double TransitionMatrix::max_row_sum_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double s = 0.0;
    for (const Entry& e : row(i)) s += e.value;
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

double TransitionMatrix::stationarity_residual() const {
  const auto moved = left_multiply(stationary_);
  double l1 = 0.0;
  for (std::size_t i = 0; i < size(); ++i) l1 += std::abs(moved[i] - stationary_[i]);
  return l1;
}

double TransitionMatrix::symmetry_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (const Entry& e : row(i)) {
      const double flow = stationary_[i] * e.value;
      const double back = stationary_[e.col] * at(e.col, i);
      worst = std::max(worst, std::abs(flow - back));
    }
  }
  return worst;
}

TransitionMatrix build_px(const BivariateFamily& fam) {
  const int n = fam.size();
  TransitionMatrix m;
  m.kind_ = ChainKind::MarginalX;
  m.n_ = n;
  for (int x = 1; x <= n; ++x) {
    m.states_.push_back({x, 0});
    m.stationary_.push_back(fam.marginal_x(x));
    const auto [p, q] = fam.birth_death(x);
    const auto self = static_cast<std::size_t>(x - 1);
    std::vector<TransitionMatrix::Entry> row;
    if (x > 1) row.push_back({self - 1, q});
    row.push_back({self, 1.0 - p - q});
    if (x < n) row.push_back({self + 1, p});
    m.push_row(std::move(row));
  }
  return m;
}

TransitionMatrix build_pdgs(const BivariateFamily& fam) {
  const int n = fam.size();
  TransitionMatrix m;
  m.kind_ = ChainKind::DGS;
  m.n_ = n;
  for (std::size_t s = 0; s < static_cast<std::size_t>(2 * n - 1); ++s) {
    const State st = staircase_state(s);
    m.states_.push_back(st);
    m.stationary_.push_back(fam.joint(st.x, st.y));
    std::vector<TransitionMatrix::Entry> row;
    for (int x_new : {st.y, st.y + 1}) {
      const double wx = fam.cond_x_given_y(x_new, st.y);
      if (wx == 0.0) continue;
      for (int y_new : {x_new - 1, x_new}) {
        const double wy = fam.cond_y_given_x(y_new, x_new);
        if (wy == 0.0) continue;
        row.push_back({staircase_index({x_new, y_new}), wx * wy});
      }
    }
    m.push_row(std::move(row));
  }
  return m;
}

TransitionMatrix build_prgs(const BivariateFamily& fam, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::BadScanProbability, "scan probability must lie in (0,1)");
  }
  const int n = fam.size();
  TransitionMatrix m;
  m.kind_ = ChainKind::RGS;
  m.scan_p_ = p;
  m.n_ = n;
  m.marginal_ = symmetrize_tridiagonal(build_px(fam));
  for (std::size_t s = 0; s < static_cast<std::size_t>(2 * n - 1); ++s) {
    const State st = staircase_state(s);
    m.states_.push_back(st);
    m.stationary_.push_back(fam.joint(st.x, st.y));
    std::vector<TransitionMatrix::Entry> row;
    for (int x_new : {st.y, st.y + 1}) {
      const double w = fam.cond_x_given_y(x_new, st.y);
      if (w > 0.0) row.push_back({staircase_index({x_new, st.y}), p * w});
    }
    for (int y_new : {st.x - 1, st.x}) {
      const double w = fam.cond_y_given_x(y_new, st.x);
      if (w > 0.0) row.push_back({staircase_index({st.x, y_new}), (1.0 - p) * w});
    }
    m.push_row(std::move(row));
  }
  return m;
}

TVCurve tv_curve(const TransitionMatrix& p, State start, int n_max) {
  const auto idx = p.index_of(start);
  if (!idx) throw Error(ErrorCode::StartNotInSupport, "start state is not a support point");
  if (n_max < 1) throw Error(ErrorCode::InvalidSpec, "tv_curve horizon must be at least 1");

  TVCurve curve;
  curve.start = start;
  curve.n_max = n_max;
  curve.values.reserve(static_cast<std::size_t>(n_max) + 1);

  const auto pi = p.stationary();
  std::vector<double> law(p.size(), 0.0);
  law[*idx] = 1.0;
  auto tv = [&](const std::vector<double>& v) {
    double l1 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) l1 += std::abs(v[i] - pi[i]);
    return std::clamp(0.5 * l1, 0.0, 1.0);
  };
  curve.values.push_back(tv(law));
  for (int n = 1; n <= n_max; ++n) {
    law = p.left_multiply(law);
    curve.values.push_back(tv(law));
  }

  std::vector<int> usable;
  for (int n = 0; n <= n_max; ++n) {
    if (curve.values[n] > kTvFloor) usable.push_back(n);
  }
  const std::size_t half = usable.size() / 2;
  const std::size_t count = usable.size() - half;
  if (count < kMinFitPoints) return curve;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = half; k < usable.size(); ++k) {
    const double x = usable[k];
    const double y = std::log(curve.values[usable[k]]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double cnt = static_cast<double>(count);
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / cnt;
  curve.rate = std::min(1.0, std::exp(slope));
  curve.constant = std::exp(intercept);
  curve.fit_first = usable[half];
  curve.fit_last = usable.back();
  return curve;
}

SymmetricTridiagonal symmetrize_tridiagonal(const TransitionMatrix& p) {
  SymmetricTridiagonal t;
  const std::size_t n = p.size();
  t.diag.resize(n);
  t.offdiag.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    t.diag[i] = p.at(i, i);
    if (i + 1 < n) t.offdiag[i] = std::sqrt(p.at(i, i + 1) * p.at(i + 1, i));
  }
  return t;
}

namespace {

// Eigenvalues of a symmetric tridiagonal matrix, ascending.
Eigen::VectorXd tridiagonal_eigenvalues(const SymmetricTridiagonal& t) {
  const Eigen::Map<const Eigen::VectorXd> diag(t.diag.data(), static_cast<Eigen::Index>(t.diag.size()));
  const Eigen::Map<const Eigen::VectorXd> off(t.offdiag.data(),
                                              static_cast<Eigen::Index>(t.offdiag.size()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

SpectralGap tridiagonal_gap(const SymmetricTridiagonal& t) {
  const Eigen::VectorXd ev = tridiagonal_eigenvalues(t);
  const Eigen::Index k = ev.size();
  // drop the Perron eigenvalue (the largest); the rest decide the norm
  double norm = 0.0;
  for (Eigen::Index i = 0; i + 1 < k; ++i) norm = std::max(norm, std::abs(ev[i]));
  SpectralGap g;
  g.norm_estimate = std::clamp(norm, 0.0, 1.0);
  g.gap = 1.0 - g.norm_estimate;
  return g;
}

// P_RGS = p E_X + (1 - p) E_Y with E_X, E_Y the conditional-expectation
// projections. On each two-dimensional invariant block where the projections
// meet at angle t, with cos^2 t an eigenvalue lam of P_X, the eigenvalues are
// (1 +- sqrt(1 - 4p(1-p)(1 - lam))) / 2. The constants give the eigenvalue 1
// and these blocks exhaust the remaining 2N - 2 dimensions. P_X is positive
// semidefinite, so the norm comes from the largest nontrivial lam.
SpectralGap random_scan_gap(const SymmetricTridiagonal& marginal, double p) {
  const Eigen::VectorXd ev = tridiagonal_eigenvalues(marginal);
  const double lam = ev.size() >= 2 ? std::clamp(ev[ev.size() - 2], 0.0, 1.0) : 0.0;
  const double eps = 4.0 * p * (1.0 - p) * (1.0 - lam);
  const double s = std::sqrt(1.0 - eps);
  SpectralGap g;
  g.gap = eps / (2.0 * (1.0 + s));
  g.norm_estimate = 1.0 - g.gap;
  return g;
}

}  // namespace

SpectralGap spectral_gap(const TransitionMatrix& p) {
  switch (p.kind()) {
    case ChainKind::MarginalX: return tridiagonal_gap(symmetrize_tridiagonal(p));
    case ChainKind::RGS: return random_scan_gap(p.marginal_, p.scan_p());
    case ChainKind::DGS: break;
  }
  throw Error(ErrorCode::NotSymmetricKernel, "the deterministic-scan kernel is not reversible");
}

}  // namespace ergochain
