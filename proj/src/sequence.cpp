#include "ergochain/sequence.hpp"

#include <array>
#include <cmath>

#include "ergochain/error.hpp"
#include "ergochain/logmath.hpp"

namespace ergochain {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double safe_log(double v) { return v > 0.0 ? std::log(v) : std::nan(""); }

// log sum_{x >= n} c r^x
double log_geometric_tail(double log_c, double r, long n) {
  return log_c + static_cast<double>(n) * std::log(r) - std::log1p(-r);
}

// log sum_{x >= n} x^{-d}: explicit summation below 100, Euler-Maclaurin above.
double log_zeta_tail(double d, long n) {
  constexpr long kSwitch = 100;
  const long m = std::max(n, kSwitch);
  const double md = static_cast<double>(m);
  const double bracket = md / (d - 1.0) + 0.5 + d / (12.0 * md) -
                         d * (d + 1) * (d + 2) / (720.0 * md * md * md) +
                         d * (d + 1) * (d + 2) * (d + 3) * (d + 4) / (30240.0 * std::pow(md, 5));
  double log_tail = -d * std::log(md) + std::log(bracket);
  if (n < kSwitch) {
    double head = 0.0;
    for (long x = kSwitch - 1; x >= n; --x) head += std::pow(static_cast<double>(x), -d);
    log_tail = log_add_exp(std::log(head), log_tail);
  }
  return log_tail;
}

// log sum_{x > k} of a table sequence extended geometrically.
double log_table_tail(const std::vector<double>& v, double t, long k) {
  const long len = static_cast<long>(v.size());
  double acc = kNegInf;
  for (long x = k + 1; x <= len; ++x) acc = log_add_exp(acc, safe_log(v[x - 1]));
  const long first = std::max(k, len) + 1;
  return log_add_exp(acc, safe_log(v.back()) + static_cast<double>(first - len) * std::log(t) -
                              std::log1p(-t));
}

double log_table_entry(const std::vector<double>& v, double t, long i) {
  const long len = static_cast<long>(v.size());
  if (i <= len) return safe_log(v[i - 1]);
  return safe_log(v.back()) + static_cast<double>(i - len) * std::log(t);
}

bool in_unit_interval(double r) { return r > 0.0 && r < 1.0; }

}  // namespace

SequenceSpec::SequenceSpec(SequenceKind kind, std::optional<DeclaredLimits> limits)
    : kind_(std::move(kind)), declared_(limits) {}

std::string_view SequenceSpec::kind_name() const {
  return std::visit(Overloaded{
                        [](const PowerLaw&) { return std::string_view("power_law"); },
                        [](const Geometric&) { return std::string_view("geometric"); },
                        [](const MixedGeometric&) { return std::string_view("mixed_geometric"); },
                        [](const Alternating&) { return std::string_view("alternating"); },
                        [](const Table&) { return std::string_view("table"); },
                    },
                    kind_);
}

double SequenceSpec::log_a(long i) const {
  const double di = static_cast<double>(i);
  return std::visit(
      Overloaded{
          [&](const PowerLaw& k) { return safe_log(k.c1) - k.d * std::log(di); },
          [&](const Geometric& k) { return safe_log(k.c) + di * std::log(k.ratio); },
          [&](const MixedGeometric& k) { return safe_log(k.c) + di * std::log(k.ratio_a); },
          [&](const Alternating& k) {
            return i % 2 == 0 ? safe_log(k.c) + di * std::log(k.ratio_slow)
                              : di * std::log(k.ratio_fast);
          },
          [&](const Table& k) { return log_table_entry(k.a, k.tail_ratio, i); },
      },
      kind_);
}

double SequenceSpec::log_b(long i) const {
  if (i == 0) return kNegInf;
  const double di = static_cast<double>(i);
  return std::visit(
      Overloaded{
          [&](const PowerLaw& k) { return safe_log(k.c2) - k.d * std::log(di); },
          [&](const Geometric& k) { return di * std::log(k.ratio); },
          [&](const MixedGeometric& k) { return di * std::log(k.ratio_b); },
          [&](const Alternating& k) {
            return i % 2 == 0 ? di * std::log(k.ratio_fast)
                              : safe_log(k.c) + di * std::log(k.ratio_slow);
          },
          [&](const Table& k) { return log_table_entry(k.b, k.tail_ratio, i); },
      },
      kind_);
}

double SequenceSpec::log_tail_mass(long k) const {
  const long n = k + 1;
  return std::visit(
      Overloaded{
          [&](const PowerLaw& s) { return safe_log(s.c1 + s.c2) + log_zeta_tail(s.d, n); },
          [&](const Geometric& s) { return log_geometric_tail(safe_log(1.0 + s.c), s.ratio, n); },
          [&](const MixedGeometric& s) {
            return log_add_exp(log_geometric_tail(safe_log(s.c), s.ratio_a, n),
                               log_geometric_tail(0.0, s.ratio_b, n));
          },
          // every index carries one slow term c s^x and one fast term f^x
          [&](const Alternating& s) {
            return log_add_exp(log_geometric_tail(safe_log(s.c), s.ratio_slow, n),
                               log_geometric_tail(0.0, s.ratio_fast, n));
          },
          [&](const Table& s) {
            return log_add_exp(log_table_tail(s.a, s.tail_ratio, k),
                               log_table_tail(s.b, s.tail_ratio, k));
          },
      },
      kind_);
}

void SequenceSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidSpec, msg); };
  std::visit(Overloaded{
                 [&](const PowerLaw& k) {
                   if (!(k.d > 1.0) || !std::isfinite(k.d)) fail("power_law requires d > 1");
                 },
                 [&](const Geometric& k) {
                   if (!in_unit_interval(k.ratio)) fail("geometric ratio must lie in (0,1)");
                 },
                 [&](const MixedGeometric& k) {
                   if (!in_unit_interval(k.ratio_a) || !in_unit_interval(k.ratio_b))
                     fail("mixed_geometric ratios must lie in (0,1)");
                 },
                 [&](const Alternating& k) {
                   if (!in_unit_interval(k.ratio_slow) || !in_unit_interval(k.ratio_fast))
                     fail("alternating ratios must lie in (0,1)");
                 },
                 [&](const Table& k) {
                   if (k.a.empty() || k.b.empty()) fail("table requires non-empty a and b");
                   if (!in_unit_interval(k.tail_ratio)) fail("table tail_ratio must lie in (0,1)");
                 },
             },
             kind_);
}

SequenceKind normalize_kind(SequenceKind kind) {
  auto mass_with = [](auto make) {
    return [make](double c) { return std::exp(SequenceSpec(make(c)).log_total_mass()); };
  };
  std::visit(Overloaded{
                 [&](PowerLaw& k) {
                   if (k.c1 > 0.0 && k.c2 > 0.0) return;
                   const double z = std::exp(log_zeta_tail(k.d, 1));
                   if (k.c1 <= 0.0 && k.c2 <= 0.0) {
                     k.c1 = k.c2 = 0.5 / z;
                   } else if (k.c1 <= 0.0) {
                     k.c1 = 1.0 / z - k.c2;
                   } else {
                     k.c2 = 1.0 / z - k.c1;
                   }
                 },
                 [&](Geometric& k) {
                   if (k.c > 0.0) return;
                   const Geometric base = k;
                   k.c = solve_unit_mass(mass_with([base](double c) {
                                           auto g = base;
                                           g.c = c;
                                           return g;
                                         }),
                                         0.0, 1e6);
                 },
                 [&](MixedGeometric& k) {
                   if (k.c > 0.0) return;
                   const MixedGeometric base = k;
                   k.c = solve_unit_mass(mass_with([base](double c) {
                                           auto g = base;
                                           g.c = c;
                                           return g;
                                         }),
                                         0.0, 1e6);
                 },
                 [&](Alternating& k) {
                   if (k.c > 0.0) return;
                   const Alternating base = k;
                   k.c = solve_unit_mass(mass_with([base](double c) {
                                           auto g = base;
                                           g.c = c;
                                           return g;
                                         }),
                                         0.0, 1e6);
                 },
                 [](Table&) {},
             },
             kind);
  return kind;
}

}  // namespace ergochain
