#include "ergochain/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ergochain/classify.hpp"
#include "ergochain/diagnostics.hpp"
#include "ergochain/error.hpp"
#include "ergochain/io.hpp"
#include "ergochain/kernels.hpp"
#include "ergochain/registry.hpp"
#include "ergochain/samplers.hpp"

namespace ergochain::cli {
namespace {

struct Options {
  std::vector<std::string> specs;
  std::vector<int> examples;
  int n = 200;
  std::uint64_t seed = 1;
  double scan_p = 0.5;
  std::string out;
  std::string format;
  std::string start;
  int steps = 100;
  std::string chain = "x";
  std::uint64_t thin = 1;
  std::string g = "x";
  std::optional<std::size_t> batch_size;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Labeled {
  std::string label;
  SequenceSpec spec;
};

std::vector<Labeled> gather_specs(const Options& o) {
  std::vector<Labeled> all;
  for (int id : o.examples) {
    const auto& ex = reference_example(id);
    all.push_back({"Example " + std::to_string(id) + " (" + ex.name + ")", ex.spec});
  }
  for (const auto& s : o.specs) {
    const auto spec = load_spec(s);
    std::string label = std::string(spec.kind_name());
    if (!s.empty() && s.front() != '{') label = s;
    all.push_back({label, spec});
  }
  return all;
}

Labeled single_spec(const Options& o) {
  auto all = gather_specs(o);
  if (all.empty()) throw UsageError("a family is required: pass --spec or --example");
  if (all.size() > 1) throw UsageError("this command takes exactly one family");
  return all.front();
}

ChainKind parse_chain(const std::string& s) {
  if (s == "x" || s == "marginal") return ChainKind::MarginalX;
  if (s == "dgs") return ChainKind::DGS;
  if (s == "rgs") return ChainKind::RGS;
  throw UsageError("unknown chain '" + s + "' (expected x, dgs or rgs)");
}

std::string chain_name(ChainKind k) {
  switch (k) {
    case ChainKind::MarginalX: return "x";
    case ChainKind::DGS: return "dgs";
    case ChainKind::RGS: return "rgs";
  }
  return "x";
}

TransitionMatrix build_chain(const BivariateFamily& fam, ChainKind kind, double scan_p) {
  switch (kind) {
    case ChainKind::MarginalX: return build_px(fam);
    case ChainKind::DGS: return build_pdgs(fam);
    case ChainKind::RGS: return build_prgs(fam, scan_p);
  }
  return build_px(fam);
}

// "x" or "x,y"; a bare x on a bivariate chain means the diagonal state (x, x).
State parse_start(const std::string& s, ChainKind kind) {
  if (s.empty()) return kind == ChainKind::MarginalX ? State{1, 0} : State{1, 1};
  int x = 0, y = 0;
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> x)) throw UsageError("bad --start '" + s + "'");
  if (is >> comma) {
    if (comma != ',' || !(is >> y)) throw UsageError("bad --start '" + s + "'");
  } else {
    y = x;
  }
  if (kind == ChainKind::MarginalX) y = 0;
  return {x, y};
}

std::function<double(const ChainState&)> parse_g(const std::string& s) {
  if (s == "x") return [](const ChainState& st) { return static_cast<double>(st.x); };
  if (s == "y") return [](const ChainState& st) { return static_cast<double>(st.y); };
  if (s.rfind("ge:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(s.substr(3));
    } catch (const std::exception&) {
      throw UsageError("bad --g '" + s + "'");
    }
    return [k](const ChainState& st) { return st.x >= k ? 1.0 : 0.0; };
  }
  throw UsageError("unknown --g '" + s + "' (expected x, y or ge:K)");
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw Error(ErrorCode::UnknownFormat, "format '" + f + "' is not supported by this command");
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto s = single_spec(o);
  const auto v = classify(s.spec, o.n, o.scan_p, s.label);
  const std::string fmt = o.format.empty() ? "json" : o.format;
  require_format(fmt, {"json", "table"});
  if (fmt == "json") {
    out << verdict_to_json(v).dump(2) << "\n";
  } else {
    out << verdict_report(std::span(&v, 1), "table");
  }
  return v.verdict == Verdict::Inconclusive ? kInconclusive : kOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  auto all = gather_specs(o);
  if (all.empty()) throw UsageError("report needs at least one --spec or --example");
  std::vector<ErgodicityVerdict> verdicts;
  for (auto& s : all) verdicts.push_back(classify(s.spec, o.n, o.scan_p, s.label));
  const std::string fmt = o.format.empty() ? "table" : o.format;
  require_format(fmt, {"json", "table"});
  out << verdict_report(verdicts, fmt);
  const bool undecided = std::any_of(verdicts.begin(), verdicts.end(),
                                     [](const auto& v) { return v.verdict == Verdict::Inconclusive; });
  return undecided ? kInconclusive : kOk;
}

int cmd_examples(const Options& o, std::ostream& out) {
  std::vector<ErgodicityVerdict> verdicts;
  for (const auto& ex : reference_examples()) {
    verdicts.push_back(classify(ex.spec, o.n, o.scan_p, "Example " + std::to_string(ex.id) + " (" + ex.name + ")"));
  }
  const std::string fmt = o.format.empty() ? "table" : o.format;
  require_format(fmt, {"json", "table"});
  out << verdict_report(verdicts, fmt);
  const bool undecided = std::any_of(verdicts.begin(), verdicts.end(),
                                     [](const auto& v) { return v.verdict == Verdict::Inconclusive; });
  return undecided ? kInconclusive : kOk;
}

int cmd_drift(const Options& o, std::ostream& out) {
  const auto s = single_spec(o);
  const auto fam = BivariateFamily::build(s.spec, o.n);
  require_format(o.format.empty() ? "json" : o.format, {"json"});
  const auto cert = find_drift_certificate(fam);
  if (!cert) {
    Json j;
    j["certificate"] = nullptr;
    j["N"] = o.n;
    j["note"] = "no geometric drift certificate on this truncation";
    out << j.dump(2) << "\n";
    return kInconclusive;
  }
  const auto lifted = lift_to_rgs(*cert, o.scan_p);
  Json j = certificate_to_json(*cert, &lifted);
  j["verified"] = verify_drift(fam, *cert).holds;
  j["rgs"]["verified"] = verify_drift(fam, lifted).holds;
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const auto s = single_spec(o);
  const auto fam = BivariateFamily::build(s.spec, o.n);
  const ChainKind kind = parse_chain(o.chain);
  require_format(o.format.empty() ? "json" : o.format, {"json"});
  const auto gap = spectral_gap(build_chain(fam, kind, o.scan_p));
  Json j;
  j["chain"] = chain_name(kind);
  j["N"] = o.n;
  if (kind == ChainKind::RGS) j["scan_p"] = o.scan_p;
  j["norm_estimate"] = real_to_json(gap.norm_estimate);
  j["gap"] = real_to_json(gap.gap);
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_tvcurve(const Options& o, std::ostream& out) {
  const auto s = single_spec(o);
  const auto fam = BivariateFamily::build(s.spec, o.n);
  const ChainKind kind = parse_chain(o.chain);
  const auto p = build_chain(fam, kind, o.scan_p);
  const auto curve = tv_curve(p, parse_start(o.start, kind), o.steps);
  const std::string fmt = o.format.empty() ? "csv" : o.format;
  require_format(fmt, {"csv", "json"});
  if (fmt == "csv") {
    out << tv_to_csv(curve);
  } else {
    std::optional<double> gap;
    if (kind != ChainKind::DGS) gap = spectral_gap(p).gap;
    out << tv_summary_json(curve, gap, o.n).dump(2) << "\n";
  }
  return kOk;
}

int cmd_subgeo(const Options& o, std::ostream& out) {
  const auto s = single_spec(o);
  const auto fam = BivariateFamily::build(s.spec, o.n);
  const auto report = subgeo_report(fam);
  const std::string fmt = o.format.empty() ? "json" : o.format;
  require_format(fmt, {"csv", "json"});
  if (fmt == "csv") {
    out << subgeo_to_csv(report);
  } else {
    Json j = subgeo_to_json(report);
    const auto bounds = operator_norm_bounds(fam, o.scan_p);
    j["rgs_norm_lower_bound"] = real_to_json(bounds.rgs_norm_lb.value_or(0.0));
    j["argmin_i"] = bounds.argmin_i;
    out << j.dump(2) << "\n";
  }
  return kOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const auto s = single_spec(o);
  const auto fam = BivariateFamily::build(s.spec, o.n);
  RunConfig cfg;
  cfg.chain = parse_chain(o.chain);
  cfg.scan_p = o.scan_p;
  cfg.seed = o.seed;
  if (o.steps < 0) throw UsageError("--steps must be nonnegative");
  cfg.n_steps = static_cast<std::uint64_t>(o.steps);
  cfg.thinning = o.thin;
  const State st = parse_start(o.start, cfg.chain);
  cfg.init = {st.x, cfg.chain == ChainKind::MarginalX ? st.x : st.y, 0};
  const std::string fmt = o.format.empty() ? "csv" : o.format;
  require_format(fmt, {"csv", "json"});
  const auto trace = run_chain(fam, cfg, parse_g(o.g));
  if (fmt == "csv") {
    out << trace_to_csv(trace.states);
    return kOk;
  }
  auto est = batch_means(trace.values, o.batch_size);
  if (classify(s.spec, o.n, o.scan_p).verdict == Verdict::Subgeometric) attach_subgeometric_warning(est);
  out << batch_means_to_json(est).dump(2) << "\n";
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveSequence:
    case ErrorCode::DegenerateTruncation:
    case ErrorCode::TooFewSamples:
      return kNumericFailure;
    default:
      return kUsage;
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ergodicity classification and simulation for two-component Gibbs samplers"};
  app.name("ergochain");
  app.require_subcommand(1, 1);

  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", o.specs, "family as inline JSON or a path to a JSON file");
    sub->add_option("--example", o.examples, "built-in reference family (1-4)")->check(CLI::Range(1, 4));
    sub->add_option("--n", o.n, "truncation level N")->check(CLI::Range(2, 100000000));
    sub->add_option("--scan-p", o.scan_p, "random-scan probability of updating x");
    sub->add_option("--out", o.out, "write results to this file instead of stdout");
    sub->add_option("--format", o.format, "json, csv or table");
  };

  auto* classify_cmd = app.add_subcommand("classify", "classify one family");
  add_common(classify_cmd);
  auto* drift_cmd = app.add_subcommand("drift", "search and verify a geometric drift certificate");
  add_common(drift_cmd);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "spectral gap of the marginal or random-scan kernel");
  add_common(spectrum_cmd);
  spectrum_cmd->add_option("--chain", o.chain, "x or rgs");
  auto* tv_cmd = app.add_subcommand("tvcurve", "total-variation distance to stationarity");
  add_common(tv_cmd);
  tv_cmd->add_option("--chain", o.chain, "x, dgs or rgs");
  tv_cmd->add_option("--start", o.start, "start state: x or x,y");
  tv_cmd->add_option("--steps", o.steps, "number of steps")->check(CLI::PositiveNumber);
  auto* subgeo_cmd = app.add_subcommand("subgeo", "conditional-variance statistics");
  add_common(subgeo_cmd);
  auto* sample_cmd = app.add_subcommand("sample", "simulate a chain");
  add_common(sample_cmd);
  sample_cmd->add_option("--chain", o.chain, "x, dgs or rgs");
  sample_cmd->add_option("--start", o.start, "start state: x or x,y");
  sample_cmd->add_option("--steps", o.steps, "number of steps");
  sample_cmd->add_option("--seed", o.seed, "random seed");
  sample_cmd->add_option("--thin", o.thin, "keep every k-th state")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--g", o.g, "function averaged in json output: x, y or ge:K");
  sample_cmd->add_option("--batch-size", o.batch_size, "batch size for the standard error");
  auto* examples_cmd = app.add_subcommand("examples", "classify the four reference families");
  add_common(examples_cmd);
  auto* report_cmd = app.add_subcommand("report", "classify several families into one table");
  add_common(report_cmd);

  // CLI11 consumes the vector from the back
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    if (!(o.scan_p > 0.0 && o.scan_p < 1.0)) throw Error(ErrorCode::BadScanProbability, "--scan-p must lie in (0,1)");
    if (classify_cmd->parsed()) code = cmd_classify(o, buffer);
    else if (drift_cmd->parsed()) code = cmd_drift(o, buffer);
    else if (spectrum_cmd->parsed()) code = cmd_spectrum(o, buffer);
    else if (tv_cmd->parsed()) code = cmd_tvcurve(o, buffer);
    else if (subgeo_cmd->parsed()) code = cmd_subgeo(o, buffer);
    else if (sample_cmd->parsed()) code = cmd_sample(o, buffer);
    else if (examples_cmd->parsed()) code = cmd_examples(o, buffer);
    else if (report_cmd->parsed()) code = cmd_report(o, buffer);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericFailure;
  }

  if (o.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << o.out << "'\n";
      return kUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace ergochain::cli
