#include "cubetest/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cubetest/cochain.hpp"
#include "cubetest/cohomology.hpp"
#include "cubetest/errors.hpp"
#include "cubetest/testers.hpp"

namespace cubetest {

namespace {

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::string sign_text(Sign s) { return s.is_plus() ? "+1" : "-1"; }

Sign sign_arg(int v, const char* name) {
  if (v != 1 && v != -1) throw RangeError(std::string("--") + name + " must be 1 or -1");
  return Sign::from_int(v);
}

void require_dim(const RunConfig& cfg) {
  if (cfg.d != 1 && cfg.d != 2) throw DimensionError("--d must be 1 or 2");
  if (cfg.n < corners_of(cfg.d + 1) || cfg.n > kMaxVertices) {
    throw RangeError("--n must be in [" + std::to_string(corners_of(cfg.d + 1)) + ", " + std::to_string(kMaxVertices) +
                     "] for d=" + std::to_string(cfg.d));
  }
}

CochainFile load(const RunConfig& cfg) {
  if (cfg.in.empty()) throw RangeError("--in is required");
  std::ifstream is(cfg.in);
  if (!is) throw IoError("cannot open " + cfg.in);
  return read_cochain(is);
}

void save(const std::string& path, const Cochain& c, const std::vector<std::string>& comments) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path);
  write_cochain(os, c, comments);
  if (!os) throw IoError("write failed for " + path);
}

// theta delta^0 alpha for d = 1, theta [pi] delta^1 f for d = 2.
Cochain plant(int n, int d, Sign theta, Sign pi, Rng& rng) {
  Cochain c = delta(Cochain::random(n, d - 1, rng));
  if (d == 2 && pi.is_minus()) c *= bracket_cochain(n, pi);
  return c * theta;
}

std::uint64_t flip_cells(Cochain& c, double rate, Rng& rng) {
  if (rate <= 0.0) return 0;
  std::bernoulli_distribution coin(rate);
  std::uint64_t flips = 0;
  for (std::uint64_t x = 0; x < c.size(); ++x) {
    if (coin(rng)) {
      c.flip(x);
      ++flips;
    }
  }
  return flips;
}

std::ostream& fmt(std::ostream& os) { return os << std::setprecision(10); }

}  // namespace

int cmd_gen(const RunConfig& cfg, std::ostream& report) {
  require_dim(cfg);
  if (cfg.noise < 0.0 || cfg.noise > 1.0) throw RangeError("--noise must be in [0, 1]");
  Rng rng(cfg.seed);
  Sign theta = sign_arg(cfg.theta, "theta");
  Sign pi = sign_arg(cfg.pi, "pi");
  Cochain c(cfg.n, cfg.d);
  std::uint64_t flips = 0;
  if (cfg.kind == "coboundary") {
    c = plant(cfg.n, cfg.d, theta, pi, rng);
  } else if (cfg.kind == "cocycle") {
    std::uniform_int_distribution<int> coin(0, 1);
    theta = Sign::from_bit(static_cast<unsigned>(coin(rng)));
    pi = cfg.d == 2 ? Sign::from_bit(static_cast<unsigned>(coin(rng))) : Sign::plus();
    c = plant(cfg.n, cfg.d, theta, pi, rng);
  } else if (cfg.kind == "noisy") {
    c = plant(cfg.n, cfg.d, theta, pi, rng);
    flips = flip_cells(c, cfg.noise, rng);
  } else if (cfg.kind == "random") {
    c = Cochain::random(cfg.n, cfg.d, rng);
  } else {
    throw RangeError("unknown --kind '" + cfg.kind + "' (coboundary, cocycle, noisy, random)");
  }
  std::ostringstream prov;
  fmt(prov) << "plant kind=" << cfg.kind << " n=" << cfg.n << " d=" << cfg.d << " seed=" << cfg.seed;
  if (cfg.kind != "random") {
    prov << " theta=" << sign_text(theta);
    if (cfg.d == 2) prov << " pi=" << sign_text(pi);
  }
  if (cfg.kind == "noisy") prov << " noise=" << cfg.noise << " flips=" << flips;
  const std::vector<std::string> comments = {prov.str()};
  if (cfg.out.empty()) {
    write_cochain(report, c, comments);
  } else {
    save(cfg.out, c, comments);
  }
  return kExitOk;
}

int cmd_test(const RunConfig& cfg, std::ostream& report) {
  const auto file = load(cfg);
  const Cochain& c = file.chain;
  if (c.dim() != 1 && c.dim() != 2) throw DimensionError("test takes a 1- or 2-cochain");
  Rng rng(cfg.seed);
  const TestVerdict v = c.dim() == 1 ? test_B1(c, cfg.trials, rng) : test_Z2(c, cfg.trials, rng);
  fmt(report);
  report << "command test\n";
  report << "n " << c.n() << "\nd " << c.dim() << '\n';
  report << "property " << (c.dim() == 1 ? "B1" : "Z2") << '\n';
  report << "seed " << cfg.seed << '\n';
  report << "trials " << v.trials << '\n';
  report << "queries_per_trial " << v.queries_per_trial << '\n';
  report << "rejections " << v.rejections << '\n';
  report << "rejection_rate " << v.rejection_rate() << '\n';
  report << "accepted " << yes_no(v.accepted) << '\n';
  report << "witness";
  if (v.rejecting_witness) {
    for (Vertex x : v.rejecting_witness->ids()) report << ' ' << x;
  } else {
    report << " none";
  }
  report << '\n';
  // with T trials, per-trial rejection eta >= 1 - 3^(-1/T) gives rejection with probability >= 2/3
  if (v.trials > 0) {
    const double eta = 1.0 - std::pow(3.0, -1.0 / static_cast<double>(v.trials));
    const double omega = c.dim() == 1 ? 1.0 / 3.0 : 1.0 / 1504.0;
    report << "detection_probability 2/3\n";
    report << "detects_rejection_rate_at_least " << eta << '\n';
    report << "detects_distance_at_least " << std::min(1.0, eta / omega) << '\n';
  }
  return v.accepted ? kExitOk : kExitRejected;
}

int cmd_decode(const RunConfig& cfg, std::ostream& report) {
  const auto file = load(cfg);
  const Cochain& c = file.chain;
  Rng rng(cfg.seed);
  DecodeOptions opts;
  opts.budget = cfg.budget;
  opts.force_exact = cfg.exact;
  DecodeReport r;
  if (c.dim() == 1) {
    r = decode_B1(c, rng, opts);
  } else if (c.dim() == 2) {
    r = decode_Z2(c, rng, opts);
  } else {
    throw DimensionError("decode takes a 1- or 2-cochain");
  }
  fmt(report);
  report << "command decode\n";
  report << "n " << c.n() << "\nd " << c.dim() << '\n';
  report << "seed " << cfg.seed << '\n';
  report << "budget " << (cfg.budget != 0 ? cfg.budget : 64 * static_cast<std::uint64_t>(c.n()) * static_cast<std::uint64_t>(c.n())) << '\n';
  report << "theta " << sign_text(r.theta) << '\n';
  if (c.dim() == 2) report << "pi " << sign_text(r.pi) << '\n';
  report << "anchors";
  for (Vertex a : r.anchors) report << ' ' << a;
  report << '\n';
  report << "delta_norm " << r.delta_norm.value << '\n';
  report << "delta_norm_exact " << yes_no(r.delta_norm.exact) << '\n';
  if (r.delta_norm_exact) {
    report << "delta_norm_ratio " << *r.delta_norm_exact << '\n';
  } else {
    report << "delta_norm_samples " << r.delta_norm.samples << '\n';
    report << "delta_norm_half_width " << r.delta_norm.half_width << '\n';
  }
  report << "ratio_constant " << r.ratio_constant << '\n';
  report << "certified_bound " << r.certified_bound << '\n';
  report << "achieved_distance " << r.achieved_distance << '\n';
  report << "achieved_distance_value " << r.achieved_distance.value() << '\n';
  report << "within_bound " << yes_no(r.within_bound) << '\n';
  if (c.dim() == 2) report << "symmetrized " << r.symmetrized << '\n';
  if (!cfg.out.empty()) {
    std::ostringstream note;
    note << "decoded theta=" << sign_text(r.theta);
    if (c.dim() == 2) note << " pi=" << sign_text(r.pi);
    save(cfg.out, r.recovered, {note.str()});
  }
  return kExitOk;
}

int cmd_cohomology(const RunConfig& cfg, std::ostream& report) {
  const auto r = cohomology(cfg.n, cfg.d, cfg.force);
  report << "command cohomology\n";
  report << "n " << r.n << "\nd " << r.d << '\n';
  report << "dim_C " << r.dim_C << '\n';
  report << "dim_Z " << r.dim_Z << '\n';
  report << "dim_B " << r.dim_B << '\n';
  report << "dim_H " << r.dim_H << '\n';
  report << "generators " << (r.d == 1 ? "-1" : "-1 [-1]") << '\n';
  report << "generators_independent " << yes_no(r.generators_independent) << '\n';
  report << "covered " << yes_no(r.covered) << '\n';
  if (r.d == 2 && r.n >= 10) {
    const auto s = verify_Z2_structure(r.n);
    report << "dim_B2vec " << s.dim_B2vec << '\n';
    report << "minus_one_in_B2vec " << yes_no(s.minus_one_in_B2vec) << '\n';
    report << "index_Z2_B2 " << s.index_Z2_B2 << '\n';
    report << "structure_confirmed " << yes_no(s.confirmed) << '\n';
  }
  return kExitOk;
}

int cmd_expansion(const RunConfig& cfg, std::ostream& report) {
  std::string mode = cfg.mode;
  if (mode == "auto") mode = cfg.d == 1 ? "exact" : "probe";
  fmt(report);
  report << "command expansion\n";
  report << "n " << cfg.n << "\nd " << cfg.d << '\n';
  if (mode == "exact") {
    if (cfg.d != 1) throw DimensionError("exact expansion is computed for d=1 only");
    const Ratio w = expansion_exact(cfg.n);
    report << "mode exact\n";
    report << "omega " << w << '\n';
    report << "omega_value " << w.value() << '\n';
    report << "certified_lower 1/3\n";
    report << "consistent " << yes_no(w >= Ratio{1, 3}) << '\n';
  } else if (mode == "probe") {
    if (cfg.d != 2) throw DimensionError("expansion probes are run for d=2 only");
    Rng rng(cfg.seed);
    const auto p = expansion_probe(cfg.n, rng, cfg.trials);
    report << "mode probe\n";
    report << "heuristic true\n";
    report << "seed " << cfg.seed << '\n';
    report << "probes " << p.probes << '\n';
    report << "excluded " << p.excluded << '\n';
    if (p.value) {
      report << "omega_estimate " << *p.value << '\n';
      report << "certified_lower 1/1504\n";
      report << "consistent " << yes_no(*p.value >= 1.0 / 1504.0) << '\n';
    } else {
      report << "omega_estimate none\n";
    }
  } else {
    throw RangeError("unknown --mode '" + cfg.mode + "' (auto, exact, probe)");
  }
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& report) {
  require_dim(cfg);
  if (cfg.d == 1 && cfg.n < 5) throw RangeError("bench with d=1 decodes and needs n >= 5");
  if (cfg.d == 2 && cfg.n < 12) throw RangeError("bench with d=2 decodes and needs n >= 12");
  std::vector<double> grid = cfg.grid;
  if (grid.empty()) grid = {0.0, 0.001, 0.005, 0.01};
  for (double rate : grid) {
    if (rate < 0.0 || rate > 1.0) throw RangeError("noise rates must be in [0, 1]");
  }
  const Sign theta = sign_arg(cfg.theta, "theta");
  const Sign pi = sign_arg(cfg.pi, "pi");

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw IoError("cannot write " + cfg.out);
  }
  std::ostream& csv = cfg.out.empty() ? report : file;
  fmt(csv);
  csv << "noise_rate,distance_upper_bound,delta_norm,per_trial_rejection,observed_rejection,trials,seed,exact\n";
  for (double rate : grid) {
    Rng rng(cfg.seed);
    Cochain c = plant(cfg.n, cfg.d, theta, pi, rng);
    flip_cells(c, rate, rng);
    DecodeOptions opts;
    opts.budget = cfg.budget;
    opts.force_exact = cfg.exact;
    const DecodeReport r = cfg.d == 1 ? decode_B1(c, rng, opts) : decode_Z2(c, rng, opts);
    const TestVerdict v = cfg.d == 1 ? test_B1(c, cfg.trials, rng) : test_Z2(c, cfg.trials, rng);
    // the test rejects exactly when the sampled cell has delta value -1
    const double per_trial = r.delta_norm.value;
    csv << rate << ',' << r.achieved_distance.value() << ',' << r.delta_norm.value << ',' << per_trial << ','
        << v.rejection_rate() << ',' << cfg.trials << ',' << cfg.seed << ',' << yes_no(r.delta_norm.exact) << '\n';
  }
  if (!cfg.out.empty()) {
    if (!file) throw IoError("write failed for " + cfg.out);
    report << "command bench\nrows " << grid.size() << "\nout " << cfg.out << '\n';
  }
  return kExitOk;
}

int run_command(const RunConfig& cfg, std::ostream& report, std::ostream& err) {
  try {
    if (cfg.command == "gen") return cmd_gen(cfg, report);
    if (cfg.command == "test") return cmd_test(cfg, report);
    if (cfg.command == "decode") return cmd_decode(cfg, report);
    if (cfg.command == "cohomology") return cmd_cohomology(cfg, report);
    if (cfg.command == "expansion") return cmd_expansion(cfg, report);
    if (cfg.command == "bench") return cmd_bench(cfg, report);
    err << "error: unknown command '" << cfg.command << "'\n";
  } catch (const ParseError& e) {
    err << "error: " << cfg.in << ": " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace cubetest
