#include "ergochain/classify.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "ergochain/error.hpp"
#include "ergochain/io.hpp"

namespace ergochain {
namespace {

// A(1+M)/(1+m) at or above this is treated as undecided.
constexpr double kCorollaryBorder = 0.99;

struct CertifiedDrift {
  DriftCertificate base;
  RgsDriftCertificate rgs;
};

std::optional<CertifiedDrift> certified_drift(const BivariateFamily& fam, double scan_p) {
  const auto cert = find_drift_certificate(fam);
  if (!cert || !verify_drift(fam, *cert).holds) return std::nullopt;
  const auto lifted = lift_to_rgs(*cert, scan_p);
  if (!(lifted.gamma < 1.0) || !verify_drift(fam, lifted).holds) return std::nullopt;
  return CertifiedDrift{*cert, lifted};
}

bool corollary1_holds(const TailLimits& t) {
  const bool converged = t.a_ratio.converged && t.ab_ratio.converged && t.a_over_bprev.converged &&
                         t.b_over_a.converged;
  if (!converged) return false;
  if (!std::isfinite(t.lim_a_over_bprev) || !std::isfinite(t.lim_b_over_a)) return false;
  if (!std::isfinite(t.A) || !std::isfinite(t.M)) return false;
  return t.A * (1.0 + t.M) / (1.0 + t.m) < kCorollaryBorder;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Geometric: return "Geometric";
    case Verdict::Subgeometric: return "Subgeometric";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view to_string(Basis b) {
  switch (b) {
    case Basis::None: return "None";
    case Basis::Lemma3: return "Lemma3";
    case Basis::Corollary1: return "Corollary1";
    case Basis::Lemma4: return "Lemma4";
    case Basis::Declared: return "Declared";
  }
  return "None";
}

std::string_view to_string(Lemma4Stat s) {
  switch (s) {
    case Lemma4Stat::S1: return "S1";
    case Lemma4Stat::S2: return "S2";
    case Lemma4Stat::S3: return "S3";
  }
  return "S1";
}

ErgodicityVerdict classify(const SequenceSpec& spec, int n, double scan_p, std::string label) {
  const BivariateFamily fam = BivariateFamily::build(spec, n);
  if (!(scan_p > 0.0 && scan_p < 1.0)) {
    throw Error(ErrorCode::BadScanProbability, "scan probability must lie in (0,1)");
  }

  ErgodicityVerdict v;
  v.label = std::move(label);
  v.n = n;
  v.scan_p = scan_p;

  const TailLimits limits = tail_limits(spec, 4L * n, std::max(10, n));
  const TailSurrogates surrogates = drift_tail_surrogates(fam);
  v.quantities = {limits.A,
                  limits.m,
                  limits.M,
                  surrogates.r_hat,
                  surrogates.q_hat,
                  limits.lim_a_over_bprev,
                  limits.lim_b_over_a};
  v.limits_converged = limits.a_ratio.converged && limits.ab_ratio.converged &&
                       limits.a_over_bprev.converged && limits.b_over_a.converged;
  // an extended-real limit: finite, +inf or 0, but not an oscillation
  auto exists = [](const LimitEstimate& e) { return e.converged || e.to_infinity || e.to_zero; };
  v.equivalence_applies = exists(limits.a_ratio) && exists(limits.ab_ratio);
  v.evidence = limits.declared && v.equivalence_applies ? "paper-certified" : "numeric-evidence";

  const Lemma4Stats stats = lemma4_tests(fam);
  v.fired = stats.fired();

  if (corollary1_holds(limits)) {
    if (auto drift = certified_drift(fam, scan_p)) {
      v.certificate = drift->base;
      v.rgs_certificate = drift->rgs;
      if (stats.any()) {
        v.note = "drift certificate and divergence statistics disagree";
        return v;
      }
      v.verdict = Verdict::Geometric;
      v.basis = limits.declared ? Basis::Declared : Basis::Corollary1;
      if (v.equivalence_applies) v.note = "limits exist: X, DGS and RGS chains share the verdict";
      return v;
    }
    v.note = "limit conditions hold but no drift certificate verified on the truncation";
  }

  if (stats.any()) {
    v.verdict = Verdict::Subgeometric;
    v.basis = Basis::Lemma4;
    v.subgeo = subgeo_report(fam);
    v.note = v.equivalence_applies ? "limits exist: X, DGS and RGS chains share the verdict"
                                   : "divergence statistic fired";
    return v;
  }

  if (auto drift = certified_drift(fam, scan_p)) {
    v.verdict = Verdict::Geometric;
    v.basis = Basis::Lemma3;
    v.certificate = drift->base;
    v.rgs_certificate = drift->rgs;
    return v;
  }

  if (v.note.empty()) v.note = "no sufficient condition decided on this truncation";
  return v;
}

std::string verdict_report(std::span<const ErgodicityVerdict> verdicts, std::string_view format) {
  if (verdicts.empty()) throw Error(ErrorCode::EmptyInput, "no verdicts to report");
  if (format == "json") return verdicts_to_json(verdicts).dump(2) + "\n";
  if (format != "table") {
    throw Error(ErrorCode::UnknownFormat, "unknown report format '" + std::string(format) + "'");
  }
  std::ostringstream os;
  os << std::left << std::setw(40) << "family" << std::setw(7) << "N" << std::setw(14) << "verdict"
     << std::setw(12) << "basis" << std::setw(10) << "flags" << std::right << std::setw(12) << "A"
     << std::setw(12) << "m" << std::setw(12) << "M" << std::setw(12) << "r" << std::setw(12) << "q"
     << "  evidence\n";
  auto num = [](double x) {
    std::ostringstream s;
    if (std::isinf(x)) {
      s << (x > 0 ? "inf" : "-inf");
    } else {
      s << std::setprecision(5) << x;
    }
    return s.str();
  };
  for (const auto& v : verdicts) {
    std::string flags;
    for (auto s : v.fired) flags += (flags.empty() ? "" : ",") + std::string(to_string(s));
    if (flags.empty()) flags = "-";
    os << std::left << std::setw(40) << v.label.substr(0, 39) << std::setw(7) << v.n << std::setw(14)
       << to_string(v.verdict) << std::setw(12) << to_string(v.basis) << std::setw(10) << flags
       << std::right << std::setw(12) << num(v.quantities.A) << std::setw(12) << num(v.quantities.m)
       << std::setw(12) << num(v.quantities.M) << std::setw(12) << num(v.quantities.r)
       << std::setw(12) << num(v.quantities.q) << "  " << v.evidence << "\n";
  }
  return os.str();
}

}  // namespace ergochain
