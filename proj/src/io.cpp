#include "ergochain/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ergochain/error.hpp"

namespace ergochain {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidSpec, what); }

double num_or(const Json& params, const char* key, double fallback) {
  if (!params.contains(key) || params[key].is_null()) return fallback;
  return real_from_json(params[key]);
}

std::vector<double> reals_from_json(const Json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(real_from_json(e));
  return out;
}

Json reals_to_json(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(real_to_json(x));
  return out;
}

std::string csv_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "Geometric") return Verdict::Geometric;
  if (s == "Subgeometric") return Verdict::Subgeometric;
  if (s == "Inconclusive") return Verdict::Inconclusive;
  bad("unknown verdict '" + s + "'");
}

Basis basis_from_string(const std::string& s) {
  for (Basis b : {Basis::None, Basis::Lemma3, Basis::Corollary1, Basis::Lemma4, Basis::Declared}) {
    if (to_string(b) == s) return b;
  }
  bad("unknown basis '" + s + "'");
}

Lemma4Stat stat_from_string(const std::string& s) {
  for (Lemma4Stat t : {Lemma4Stat::S1, Lemma4Stat::S2, Lemma4Stat::S3}) {
    if (to_string(t) == s) return t;
  }
  bad("unknown statistic '" + s + "'");
}

Json stats_to_json(const Lemma4Stats& s) {
  Json j;
  j["horizon"] = s.horizon;
  j["indices"] = s.indices;
  j["log_s1"] = reals_to_json(s.log_s1);
  j["log_s2"] = reals_to_json(s.log_s2);
  j["log_s3"] = reals_to_json(s.log_s3);
  j["diverging"] = {{"S1", s.s1_diverging}, {"S2", s.s2_diverging}, {"S3", s.s3_diverging}};
  return j;
}

Lemma4Stats stats_from_json(const Json& j) {
  Lemma4Stats s;
  s.horizon = j.at("horizon").get<long>();
  s.indices = j.at("indices").get<std::vector<long>>();
  s.log_s1 = reals_from_json(j.at("log_s1"));
  s.log_s2 = reals_from_json(j.at("log_s2"));
  s.log_s3 = reals_from_json(j.at("log_s3"));
  const auto& d = j.at("diverging");
  s.s1_diverging = d.at("S1").get<bool>();
  s.s2_diverging = d.at("S2").get<bool>();
  s.s3_diverging = d.at("S3").get<bool>();
  return s;
}

}  // namespace

Json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf" || s == "-Infinity") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  bad("expected a number or \"inf\", got " + j.dump());
}

Json spec_to_json(const SequenceSpec& spec) {
  Json j;
  j["kind"] = std::string(spec.kind_name());
  Json params = Json::object();
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PowerLaw>) {
          params["d"] = k.d;
          params["c1"] = k.c1;
          params["c2"] = k.c2;
        } else if constexpr (std::is_same_v<K, Geometric>) {
          params["c"] = k.c;
          params["ratio"] = k.ratio;
        } else if constexpr (std::is_same_v<K, MixedGeometric>) {
          params["c"] = k.c;
          params["ratio_a"] = k.ratio_a;
          params["ratio_b"] = k.ratio_b;
        } else if constexpr (std::is_same_v<K, Alternating>) {
          params["c"] = k.c;
          params["ratio_slow"] = k.ratio_slow;
          params["ratio_fast"] = k.ratio_fast;
        } else {
          params["a"] = k.a;
          params["b"] = k.b;
          params["tail_ratio"] = k.tail_ratio;
        }
      },
      spec.kind());
  j["params"] = params;
  if (const auto& d = spec.declared_limits()) {
    j["declared_limits"] = {{"A", real_to_json(d->A)},
                            {"lim_ab", real_to_json(d->lim_ab)},
                            {"lim_a_over_bprev", real_to_json(d->lim_a_over_bprev)},
                            {"lim_b_over_a", real_to_json(d->lim_b_over_a)}};
  } else {
    j["declared_limits"] = nullptr;
  }
  return j;
}

SequenceSpec spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    bad("sequence spec must be an object with a string \"kind\"");
  }
  const auto kind = j["kind"].get<std::string>();
  const Json params = j.contains("params") && !j["params"].is_null() ? j["params"] : Json::object();
  if (!params.is_object()) bad("\"params\" must be an object");

  SequenceKind k;
  try {
    if (kind == "power_law") {
      k = PowerLaw{num_or(params, "d", 2.0), num_or(params, "c1", 0.0), num_or(params, "c2", 0.0)};
    } else if (kind == "geometric") {
      k = Geometric{num_or(params, "c", 0.0), num_or(params, "ratio", kInvE)};
    } else if (kind == "mixed_geometric") {
      MixedGeometric m;
      m.c = num_or(params, "c", 0.0);
      m.ratio_a = num_or(params, "ratio_a", m.ratio_a);
      m.ratio_b = num_or(params, "ratio_b", m.ratio_b);
      k = m;
    } else if (kind == "alternating") {
      Alternating a;
      a.c = num_or(params, "c", 0.0);
      a.ratio_slow = num_or(params, "ratio_slow", a.ratio_slow);
      a.ratio_fast = num_or(params, "ratio_fast", a.ratio_fast);
      k = a;
    } else if (kind == "table") {
      Table t;
      if (!params.contains("a") || !params.contains("b")) bad("table spec needs \"a\" and \"b\"");
      t.a = reals_from_json(params["a"]);
      t.b = reals_from_json(params["b"]);
      t.tail_ratio = num_or(params, "tail_ratio", t.tail_ratio);
      k = t;
    } else {
      bad("unknown sequence kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed sequence parameters: ") + e.what());
  }

  std::optional<DeclaredLimits> declared;
  if (j.contains("declared_limits") && !j["declared_limits"].is_null()) {
    const auto& d = j["declared_limits"];
    if (!d.is_object()) bad("\"declared_limits\" must be an object");
    for (const char* key : {"A", "lim_ab", "lim_a_over_bprev", "lim_b_over_a"}) {
      if (!d.contains(key)) bad(std::string("declared_limits missing \"") + key + "\"");
    }
    declared = DeclaredLimits{real_from_json(d["A"]), real_from_json(d["lim_ab"]),
                              real_from_json(d["lim_a_over_bprev"]), real_from_json(d["lim_b_over_a"])};
    for (double v : {declared->A, declared->lim_ab, declared->lim_a_over_bprev, declared->lim_b_over_a}) {
      if (std::isnan(v) || v < 0.0) bad("declared limits must be nonnegative extended reals");
    }
  }

  // Validate before solving for the scale so bad ratios are reported as such.
  std::visit(
      [](auto& kk) {
        using K = std::decay_t<decltype(kk)>;
        if constexpr (std::is_same_v<K, PowerLaw>) {
          if (!(kk.d > 1.0)) bad("power_law needs d > 1");
          if (kk.c1 < 0.0 || kk.c2 < 0.0) bad("power_law constants must be nonnegative");
        } else if constexpr (!std::is_same_v<K, Table>) {
          if (kk.c < 0.0) bad("scale constant must be positive");
        }
      },
      k);
  SequenceSpec spec(normalize_kind(k), declared);
  spec.validate();
  return spec;
}

SequenceSpec load_spec(std::string_view source) {
  std::string text(source);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) bad("empty sequence spec");
  if (text[first] != '{') {
    std::ifstream in(text);
    if (!in) bad("cannot open spec file '" + text + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("spec is not valid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

Json certificate_to_json(const DriftCertificate& cert, const RgsDriftCertificate* rgs) {
  Json j;
  j["z"] = cert.z;
  j["rho"] = cert.rho;
  j["L"] = real_to_json(cert.L());
  j["log_L"] = real_to_json(cert.log_L);
  j["x0"] = cert.x0;
  j["r_hat"] = real_to_json(cert.r_hat);
  j["q_hat"] = real_to_json(cert.q_hat);
  j["N"] = cert.n;
  if (rgs) {
    j["rgs"] = {{"p", rgs->p},
                {"c", rgs->c},
                {"gamma", rgs->gamma},
                {"L_rgs", real_to_json(rgs->L_rgs())},
                {"log_L_rgs", real_to_json(rgs->log_L_rgs)}};
  }
  return j;
}

DriftCertificate certificate_from_json(const Json& j) {
  DriftCertificate c;
  c.z = j.at("z").get<double>();
  c.rho = j.at("rho").get<double>();
  c.log_L = real_from_json(j.at("log_L"));
  c.x0 = j.at("x0").get<int>();
  c.r_hat = real_from_json(j.at("r_hat"));
  c.q_hat = real_from_json(j.at("q_hat"));
  c.n = j.at("N").get<int>();
  return c;
}

RgsDriftCertificate rgs_certificate_from_json(const Json& j) {
  RgsDriftCertificate r;
  r.base = certificate_from_json(j);
  const auto& g = j.at("rgs");
  r.p = g.at("p").get<double>();
  r.c = g.at("c").get<double>();
  r.gamma = g.at("gamma").get<double>();
  r.log_L_rgs = real_from_json(g.at("log_L_rgs"));
  return r;
}

Json subgeo_to_json(const SubgeoReport& report) {
  Json j;
  j["N"] = report.n;
  j["norm_lower_bound"] = real_to_json(report.norm_lower_bound);
  j["fired"] = Json::array();
  for (auto s : report.stats.fired()) j["fired"].push_back(std::string(to_string(s)));
  j["indices"] = report.indices;
  j["mu"] = reals_to_json(report.mu);
  j["T"] = reals_to_json(report.T);
  j["beta"] = reals_to_json(report.beta);
  j["stats"] = stats_to_json(report.stats);
  return j;
}

SubgeoReport subgeo_from_json(const Json& j) {
  SubgeoReport r;
  r.n = j.at("N").get<int>();
  r.norm_lower_bound = real_from_json(j.at("norm_lower_bound"));
  r.indices = j.at("indices").get<std::vector<int>>();
  r.mu = reals_from_json(j.at("mu"));
  r.T = reals_from_json(j.at("T"));
  r.beta = reals_from_json(j.at("beta"));
  r.stats = stats_from_json(j.at("stats"));
  return r;
}

std::string subgeo_to_csv(const SubgeoReport& report) {
  std::ostringstream os;
  os << "i,mu_i,T_i,log_S1_i,log_S2_i,log_S3_i\n";
  for (std::size_t k = 0; k < report.indices.size(); ++k) {
    const long i = report.indices[k];
    // stats.indices starts at 2 as well, so positions line up
    const auto pos = static_cast<std::size_t>(i - 2);
    auto stat = [&](const std::vector<double>& v) {
      return pos < v.size() ? csv_real(v[pos]) : std::string("nan");
    };
    os << i << ',' << csv_real(report.mu[k]) << ',' << csv_real(report.T[k]) << ','
       << stat(report.stats.log_s1) << ',' << stat(report.stats.log_s2) << ','
       << stat(report.stats.log_s3) << '\n';
  }
  return os.str();
}

Json verdict_to_json(const ErgodicityVerdict& v) {
  Json j;
  j["label"] = v.label;
  j["N"] = v.n;
  j["scan_p"] = v.scan_p;
  j["verdict"] = std::string(to_string(v.verdict));
  j["basis"] = std::string(to_string(v.basis));
  j["fired"] = Json::array();
  for (auto s : v.fired) j["fired"].push_back(std::string(to_string(s)));
  const auto& q = v.quantities;
  j["quantities"] = {{"A", real_to_json(q.A)},
                     {"m", real_to_json(q.m)},
                     {"M", real_to_json(q.M)},
                     {"r", real_to_json(q.r)},
                     {"q", real_to_json(q.q)},
                     {"lim_a_over_bprev", real_to_json(q.lim_a_over_bprev)},
                     {"lim_b_over_a", real_to_json(q.lim_b_over_a)}};
  j["limits_converged"] = v.limits_converged;
  j["equivalence_applies"] = v.equivalence_applies;
  j["evidence"] = v.evidence;
  if (v.certificate) {
    j["certificate"] = certificate_to_json(*v.certificate, v.rgs_certificate ? &*v.rgs_certificate : nullptr);
    // the lifted certificate may carry its own base; keep it only when it differs
    if (v.rgs_certificate && !(v.rgs_certificate->base == *v.certificate)) {
      j["certificate"]["rgs_base"] = certificate_to_json(v.rgs_certificate->base);
    }
  } else {
    j["certificate"] = nullptr;
  }
  j["subgeo"] = v.subgeo ? subgeo_to_json(*v.subgeo) : Json(nullptr);
  j["note"] = v.note;
  return j;
}

ErgodicityVerdict verdict_from_json(const Json& j) {
  ErgodicityVerdict v;
  try {
    v.label = j.at("label").get<std::string>();
    v.n = j.at("N").get<int>();
    v.scan_p = j.at("scan_p").get<double>();
    v.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    v.basis = basis_from_string(j.at("basis").get<std::string>());
    for (const auto& s : j.at("fired")) v.fired.push_back(stat_from_string(s.get<std::string>()));
    const auto& q = j.at("quantities");
    v.quantities = {real_from_json(q.at("A")),
                    real_from_json(q.at("m")),
                    real_from_json(q.at("M")),
                    real_from_json(q.at("r")),
                    real_from_json(q.at("q")),
                    real_from_json(q.at("lim_a_over_bprev")),
                    real_from_json(q.at("lim_b_over_a"))};
    v.limits_converged = j.at("limits_converged").get<bool>();
    v.equivalence_applies = j.at("equivalence_applies").get<bool>();
    v.evidence = j.at("evidence").get<std::string>();
    const auto& c = j.at("certificate");
    if (!c.is_null()) {
      v.certificate = certificate_from_json(c);
      if (c.contains("rgs")) {
        v.rgs_certificate = rgs_certificate_from_json(c);
        if (c.contains("rgs_base")) v.rgs_certificate->base = certificate_from_json(c["rgs_base"]);
      }
    }
    if (!j.at("subgeo").is_null()) v.subgeo = subgeo_from_json(j["subgeo"]);
    v.note = j.at("note").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed verdict JSON: ") + e.what());
  }
  return v;
}

Json verdicts_to_json(std::span<const ErgodicityVerdict> verdicts) {
  Json out = Json::array();
  for (const auto& v : verdicts) out.push_back(verdict_to_json(v));
  return out;
}

Json tv_summary_json(const TVCurve& curve, std::optional<double> gap, int n) {
  Json j;
  j["rate"] = curve.rate ? real_to_json(*curve.rate) : Json(nullptr);
  j["constant"] = curve.constant ? real_to_json(*curve.constant) : Json(nullptr);
  j["gap"] = gap ? real_to_json(*gap) : Json(nullptr);
  j["N"] = n;
  return j;
}

std::string tv_to_csv(const TVCurve& curve) {
  std::ostringstream os;
  os << "n,tv\n";
  for (int k = 1; k <= curve.n_max; ++k) os << k << ',' << csv_real(curve.values[k]) << '\n';
  return os.str();
}

std::string trace_to_csv(std::span<const ChainState> states) {
  std::ostringstream os;
  os << "step,x,y\n";
  for (const auto& s : states) os << s.step << ',' << s.x << ',' << s.y << '\n';
  return os.str();
}

Json batch_means_to_json(const BatchMeansEstimate& est) {
  Json j;
  j["g_bar"] = real_to_json(est.g_bar);
  j["mcse"] = real_to_json(est.mcse);
  j["batch_size"] = est.batch_size;
  j["n"] = est.n;
  j["sigma2_hat"] = real_to_json(est.sigma2_hat);
  j["num_batches"] = est.num_batches;
  j["warning"] = est.warning ? Json(*est.warning) : Json(nullptr);
  return j;
}

}  // namespace ergochain
