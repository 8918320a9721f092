#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ergochain/drift.hpp"
#include "ergochain/subgeo.hpp"

namespace ergochain {

enum class Verdict { Geometric, Subgeometric, Inconclusive };

/// What decided the verdict. Declared means the sufficient condition on the
/// sequence limits held with user-declared (rather than estimated) limits.
enum class Basis { None, Lemma3, Corollary1, Lemma4, Declared };

std::string_view to_string(Verdict v);
std::string_view to_string(Basis b);
std::string_view to_string(Lemma4Stat s);

struct VerdictQuantities {
  double A = 0.0;
  double m = 0.0;
  double M = 0.0;
  double r = 0.0;  // limsup surrogate of p_x / q_x
  double q = 0.0;  // liminf surrogate of q_x
  double lim_a_over_bprev = 0.0;
  double lim_b_over_a = 0.0;
  bool operator==(const VerdictQuantities&) const = default;
};

struct ErgodicityVerdict {
  std::string label;
  int n = 0;
  double scan_p = 0.5;
  Verdict verdict = Verdict::Inconclusive;
  Basis basis = Basis::None;
  std::vector<Lemma4Stat> fired;
  VerdictQuantities quantities;
  bool limits_converged = false;
  // Both lim a_i/a_{i-1} and lim a_i/b_i exist (possibly infinite), so the
  // geometric/subgeometric dichotomy for all three chains is exhaustive.
  bool equivalence_applies = false;
  std::string evidence;  // "paper-certified" or "numeric-evidence"
  std::optional<DriftCertificate> certificate;
  std::optional<RgsDriftCertificate> rgs_certificate;
  std::optional<SubgeoReport> subgeo;
  std::string note;

  bool operator==(const ErgodicityVerdict&) const = default;
};

/// Corollary-style limits first, then the divergence statistics, then a raw
/// drift search; Inconclusive when none of them decides.
ErgodicityVerdict classify(const SequenceSpec& spec, int n, double scan_p = 0.5,
                           std::string label = {});

/// Renders verdicts as "table" (fixed-width text) or "json" (array, fixed
/// key order). Throws EmptyInput or UnknownFormat.
std::string verdict_report(std::span<const ErgodicityVerdict> verdicts, std::string_view format);

}  // namespace ergochain
