// Copyright 2026 The ptmoments Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ptm/bench.hpp"
#include "ptm/estimators.hpp"
#include "ptm/io.hpp"
#include "ptm/oracle.hpp"
#include "ptm/simulator.hpp"
#include "ptm/verify.hpp"
#include "ptm/witness.hpp"

namespace ptm::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

bool parse_int(std::string_view s, int& v) {
  s = trim(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Items of `a,b-c,...` in order, ranges expanded.
std::vector<int> expand_items(std::string_view text, std::string_view flag) {
  std::vector<int> out;
  for (std::string_view item : split(text, ',')) {
    const auto dash = item.find('-');
    int lo = 0, hi = 0;
    const bool ok = dash == std::string_view::npos
                        ? parse_int(item, lo) && (hi = lo, true)
                        : parse_int(item.substr(0, dash), lo) &&
                              parse_int(item.substr(dash + 1), hi);
    if (!ok || lo > hi) {
      throw UsageError(std::string(flag) + ": bad item '" + std::string(item) + "'");
    }
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

ResultFormat parse_format(const std::string& s) {
  try {
    return result_format_from_string(s);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--format: ") + e.what());
  }
}

EstimatorKind parse_algo(const std::string& s) {
  try {
    return estimator_kind_from_string(s);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--algo: ") + e.what());
  }
}

void check_algo_order(EstimatorKind algo, int m) {
  if (algo == EstimatorKind::Pauli2 && m != 2) {
    throw UsageError("--algo: pauli2 supports only --moment 2, got " + std::to_string(m));
  }
}

void check_moment(int m) {
  if (m < 1) throw UsageError("--moment: must be >= 1, got " + std::to_string(m));
}

void check_threads(int t) {
  if (t < 1) throw UsageError("--threads: must be >= 1, got " + std::to_string(t));
}

StateSpec parse_state(const std::string& text, int n) {
  try {
    return StateSpec::parse(text, n);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--state: ") + e.what());
  }
}

Bipartition resolve_partition(const std::string& text, bool given, int n) {
  return given ? parse_partition(text, n) : Bipartition::upper_half(n);
}

void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  body(file);
  if (!file) throw Error("write to '" + path + "' failed");
}

// The seed recorded by `simulate`, if present.
std::uint64_t seed_from_comments(const std::vector<std::string>& comments) {
  for (const auto& c : comments) {
    const auto pos = c.find("seed=");
    if (pos == std::string::npos) continue;
    std::uint64_t v = 0;
    const char* first = c.data() + pos + 5;
    const auto [ptr, ec] = std::from_chars(first, c.data() + c.size(), v);
    if (ec == std::errc() && ptr != first) return v;
  }
  return 0;
}

std::vector<double> estimate_all(const Bipartition& part, EstimatorKind algo, int m,
                                 int threads, std::span<const ShotRecord> shots,
                                 MomentEstimate& top) {
  OnlineEstimator est(algo, part, m, threads);
  for (const auto& s : shots) est.ingest(s);
  std::vector<double> p;
  for (int r = 1; r <= m; ++r) p.push_back(est.estimate(r).value);
  top = est.estimate(m);
  return p;
}

struct SimulateArgs {
  int n = 0;
  std::uint64_t shots = 100;
  std::string state = "ghz";
  std::uint64_t seed = 1;
  std::string out = "-";
};

void run_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const bool from_file = a.state.rfind("file:", 0) == 0;
  if (!from_file && a.n < 1) {
    throw UsageError("--qubits: required and must be >= 1 for state '" + a.state + "'");
  }
  if (a.shots < 1) throw UsageError("--shots: must be >= 1");
  const StateSpec spec = parse_state(a.state, a.n);
  const DensityMatrix rho = build_state(spec);
  if (from_file && a.n > 0 && rho.num_qubits() != a.n) {
    throw DimensionMismatch("state file has n=" + std::to_string(rho.num_qubits()) +
                            " but --qubits is " + std::to_string(a.n));
  }
  ShotRng rng(a.seed);
  const auto shots = sample_shots(rho, a.shots, rng);
  const std::vector<std::string> comments{" seed=" + std::to_string(a.seed),
                                          " state=" + spec.to_string(),
                                          " N=" + std::to_string(a.shots)};
  with_output(a.out, out, [&](std::ostream& o) {
    format_shots(o, rho.num_qubits(), shots, comments);
  });
  if (a.out != "-") err << "wrote " << shots.size() << " shots to " << a.out << '\n';
}

struct EstimateArgs {
  std::string in;
  int n = 0;
  int m = 2;
  std::string algo = "sweep";
  std::string partition;
  bool partition_given = false;
  int threads = 1;
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool all = false;
};

void run_estimate(const EstimateArgs& a, std::ostream& out) {
  check_moment(a.m);
  check_threads(a.threads);
  const EstimatorKind algo = parse_algo(a.algo);
  check_algo_order(algo, a.m);
  const ResultFormat format = parse_format(a.format);

  const ShotFile file = read_shots(a.in);
  if (a.n > 0 && a.n != file.n) {
    throw DimensionMismatch("shot file has n=" + std::to_string(file.n) +
                            " but --qubits is " + std::to_string(a.n));
  }
  const Bipartition part = resolve_partition(a.partition, a.partition_given, file.n);
  if (file.shots.size() < static_cast<std::size_t>(a.m)) {
    throw InsufficientShots("need N >= m: file has N=" +
                            std::to_string(file.shots.size()) +
                            ", --moment is " + std::to_string(a.m));
  }

  ResultRecord rec;
  rec.n = file.n;
  rec.m = a.m;
  rec.algo = std::string(to_string(algo));
  rec.shots = file.shots.size();
  rec.partition = part.mask();
  rec.seed = a.seed_given ? a.seed : seed_from_comments(file.comments);
  MomentEstimate top;
  const auto p = estimate_all(part, algo, a.m, a.threads, file.shots, top);
  rec.p_hat = top.value;
  rec.im_diagnostic = top.imag_diagnostic;
  if (a.all) {
    rec.moments = p;
    rec.e_values = newton_girard(p);
  }
  with_output(a.out, out, [&](std::ostream& o) {
    format_results(o, std::vector<ResultRecord>{rec}, format);
  });
}

struct WitnessArgs {
  std::string in;
  std::string state;
  int n = 0;
  int m = 3;
  std::string algo = "sweep";
  std::string partition;
  bool partition_given = false;
  int batches = 1;
  double tol = -1.0;  // negative: 1e-12 for exact moments, 0 otherwise
  int threads = 1;
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

void run_witness(const WitnessArgs& a, std::ostream& out, std::ostream& err) {
  check_moment(a.m);
  check_threads(a.threads);
  if (a.in.empty() == a.state.empty()) {
    throw UsageError("--in/--state: give exactly one shot file or one exact state");
  }
  if (a.batches < 1) throw UsageError("--batches: must be >= 1");
  const ResultFormat format = parse_format(a.format);

  ResultRecord rec;
  rec.m = a.m;
  std::vector<double> tol(a.m, a.tol);

  if (!a.state.empty()) {
    if (a.state.rfind("file:", 0) != 0 && a.n < 1) {
      throw UsageError("--qubits: required with --state");
    }
    const DensityMatrix rho = build_state(parse_state(a.state, a.n));
    const Bipartition part =
        resolve_partition(a.partition, a.partition_given, rho.num_qubits());
    rec.n = rho.num_qubits();
    rec.algo = "exact";
    rec.partition = part.mask();
    for (int k = 1; k <= a.m; ++k) rec.moments.push_back(pt_moment_exact(rho, part, k));
    rec.p_hat = rec.moments.back();
    if (a.tol < 0) std::fill(tol.begin(), tol.end(), 1e-12);
  } else {
    const EstimatorKind algo = parse_algo(a.algo);
    check_algo_order(algo, a.m);
    const ShotFile file = read_shots(a.in);
    const Bipartition part = resolve_partition(a.partition, a.partition_given, file.n);
    const std::size_t N = file.shots.size();
    const std::size_t per_batch = N / static_cast<std::size_t>(a.batches);
    if (per_batch < static_cast<std::size_t>(a.m) || (a.batches > 1 && per_batch < 2)) {
      throw InsufficientShots("N=" + std::to_string(N) + " shots cannot fill " +
                              std::to_string(a.batches) + " batch(es) of at least m=" +
                              std::to_string(a.m));
    }
    rec.n = file.n;
    rec.algo = std::string(to_string(algo));
    rec.shots = N;
    rec.partition = part.mask();
    rec.seed = seed_from_comments(file.comments);
    MomentEstimate top;
    rec.moments = estimate_all(part, algo, a.m, a.threads, file.shots, top);
    rec.p_hat = top.value;
    rec.im_diagnostic = top.imag_diagnostic;
    if (a.tol < 0) std::fill(tol.begin(), tol.end(), 0.0);
    if (a.batches > 1) {
      std::vector<std::vector<double>> e_reps;
      for (int b = 0; b < a.batches; ++b) {
        const std::span<const ShotRecord> chunk(file.shots.data() + b * per_batch, per_batch);
        MomentEstimate unused;
        e_reps.push_back(newton_girard(estimate_all(part, algo, a.m, a.threads, chunk, unused)));
      }
      const auto sigma = three_sigma_tolerances(e_reps);
      for (int k = 0; k < a.m; ++k) tol[k] = std::max(tol[k], sigma[k]);
    }
  }
  if (a.seed_given) rec.seed = a.seed;

  rec.e_values = newton_girard(rec.moments);
  rec.verdict = certify(rec.e_values, tol);
  with_output(a.out, out, [&](std::ostream& o) {
    format_results(o, std::vector<ResultRecord>{rec}, format);
  });
  err << "verdict: " << to_string(rec.verdict);
  if (rec.verdict.entangled()) {
    err << " (e_" << rec.verdict.order << " = "
        << format_real(rec.e_values[rec.verdict.order - 1]) << " < -"
        << format_real(tol[rec.verdict.order - 1]) << ")";
  }
  err << '\n';
}

struct BenchArgs {
  std::string qubits = "8-11";
  std::string moments = "2";
  std::string algos = "all";
  std::uint64_t shots = 10;
  int reps = 5;
  int warmup = 1;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string state = "ghz";
  std::string partition;
  bool partition_given = false;
  double min_sample = 0.02;
  std::string out = "-";
  std::string format = "csv";
};

void run_bench_cmd(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig cfg;
  cfg.qubits = parse_int_list(a.qubits, "--qubits");
  cfg.orders = parse_int_list(a.moments, "--moment");
  cfg.algos.clear();
  if (a.algos == "all") {
    cfg.algos = {EstimatorKind::Baseline, EstimatorKind::Sweep, EstimatorKind::Pauli2};
  } else {
    for (std::string_view s : split(a.algos, ',')) cfg.algos.push_back(parse_algo(std::string(s)));
  }
  cfg.shots = a.shots;
  cfg.reps = a.reps;
  cfg.warmup = a.warmup;
  cfg.threads = a.threads;
  cfg.seed = a.seed;
  cfg.state = a.state;
  cfg.min_sample_seconds = a.min_sample;
  const ResultFormat format = parse_format(a.format);
  for (int n : cfg.qubits) parse_state(a.state, n);
  if (a.partition_given) {
    const int top = *std::max_element(cfg.qubits.begin(), cfg.qubits.end());
    const std::uint64_t mask = parse_partition(a.partition, top).mask();
    for (int n : cfg.qubits) {
      if (n < 64 && (mask >> n) != 0) {
        throw UsageError("--partition: names qubits beyond n=" + std::to_string(n));
      }
    }
    cfg.partition = mask;
  }
  try {
    validate(cfg);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("bench grid: ") + e.what());
  } catch (const SizeLimitExceeded& e) {
    throw UsageError(std::string("--qubits: ") + e.what());
  }

  const auto points = run_bench(cfg, [&](const BenchPoint& p) {
    err << "n=" << p.n << " m=" << p.m << " " << to_string(p.algo) << ": "
        << format_real(p.seconds_per_shot) << " s/shot\n";
  });
  std::vector<ResultRecord> records;
  for (const auto& p : points) records.push_back(to_record(p, cfg.shots, cfg.seed));
  with_output(a.out, out, [&](std::ostream& o) { format_results(o, records, format); });
}

struct VerifyArgs {
  std::uint64_t seed = 2026;
  bool no_scaling = false;
  std::string qubits = "8-11";
  int reps = 5;
  int warmup = 1;
};

int run_verify_cmd(const VerifyArgs& a, std::ostream& out) {
  VerifyOptions opt;
  opt.seed = a.seed;
  opt.include_scaling = !a.no_scaling;
  opt.scaling_qubits = parse_int_list(a.qubits, "--qubits");
  if (opt.scaling_qubits.size() < 2) throw UsageError("--qubits: need at least two sizes");
  if (a.reps < 1) throw UsageError("--reps: must be >= 1");
  if (a.warmup < 0) throw UsageError("--warmup: must be >= 0");
  opt.scaling_reps = a.reps;
  opt.scaling_warmup = a.warmup;
  out << "# seed=" << a.seed << '\n';
  int failed = 0;
  run_verify(opt, [&](const CheckResult& r) {
    print_check(out, r);
    out.flush();
    failed += !r.passed;
  });
  out << (failed ? "FAILED: " + std::to_string(failed) + " check(s)" : std::string("all checks passed"))
      << '\n';
  return failed ? kVerifyFailed : kOk;
}

}  // namespace

Bipartition parse_partition(std::string_view text, int n) {
  std::string_view s = trim(text);
  const bool set_syntax = s.rfind("B=", 0) == 0 || s.find_first_of(",-") != std::string_view::npos;
  try {
    if (set_syntax) {
      if (s.rfind("B=", 0) == 0) s.remove_prefix(2);
      std::uint64_t mask = 0;
      if (!trim(s).empty()) {
        for (int q : expand_items(s, "--partition")) {
          if (q < 1 || q > n) {
            throw UsageError("--partition: qubit " + std::to_string(q) +
                             " outside 1.." + std::to_string(n));
          }
          mask |= std::uint64_t{1} << (q - 1);
        }
      }
      return Bipartition(n, mask);
    }
    int base = 10;
    if (s.rfind("0b", 0) == 0 || s.rfind("0x", 0) == 0) {
      base = s[1] == 'b' ? 2 : 16;
      s.remove_prefix(2);
    }
    std::uint64_t mask = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), mask, base);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("--partition: expected B=<qubits> or a bitmask, got '" +
                       std::string(text) + "'");
    }
    return Bipartition(n, mask);
  } catch (const IndexOutOfRange& e) {
    throw UsageError(std::string("--partition: ") + e.what());
  }
}

std::vector<int> parse_int_list(std::string_view text, std::string_view flag) {
  auto v = expand_items(text, flag);
  if (v.empty()) throw UsageError(std::string(flag) + ": empty list");
  return v;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial-transpose moment estimation from randomized Pauli shots", "ptm"};
  app.require_subcommand(1);

  std::function<int()> action;

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Sample randomized Pauli shots from a state");
  simulate->add_option("-n,--qubits", sim.n, "Number of qubits");
  simulate->add_option("-N,--shots", sim.shots, "Number of shots")->capture_default_str();
  simulate->add_option("--state", sim.state,
                       "bell | ghz | werner:<q> | zero | random:<seed> | file:<path>")
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  simulate->add_option("--out", sim.out, "Shot file to write ('-' for stdout)");
  simulate->callback([&] { action = [&] { run_simulate(sim, out, err); return 0; }; });

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate a PT moment from a shot file");
  estimate->add_option("--in", est.in, "Shot file")->required();
  estimate->add_option("-n,--qubits", est.n, "Expected qubit count (checked)");
  estimate->add_option("-m,--moment", est.m, "Moment order")->capture_default_str();
  estimate->add_option("--algo", est.algo, "baseline | sweep | pauli2")->capture_default_str();
  auto* est_part = estimate->add_option("--partition", est.partition,
                                        "Subsystem B: B=3-4, B=1,3 or a bitmask");
  estimate->add_option("--threads", est.threads, "Worker threads (sweep only)");
  estimate->add_option("--out", est.out, "Result file ('-' for stdout)");
  estimate->add_option("--format", est.format, "csv | json")->capture_default_str();
  auto* est_seed = estimate->add_option("--seed", est.seed, "Seed to record");
  estimate->add_flag("--all", est.all, "Also report p_1..p_m and e_1..e_m");
  estimate->callback([&] {
    est.partition_given = est_part->count() > 0;
    est.seed_given = est_seed->count() > 0;
    action = [&] { run_estimate(est, out); return 0; };
  });

  WitnessArgs wit;
  auto* witness = app.add_subcommand("witness", "Entanglement certificate from PT moments");
  witness->add_option("--in", wit.in, "Shot file (estimated moments)");
  witness->add_option("--state", wit.state, "State spec (exact moments)");
  witness->add_option("-n,--qubits", wit.n, "Qubits for --state");
  witness->add_option("-m,--moment", wit.m, "Highest moment order")->capture_default_str();
  witness->add_option("--algo", wit.algo, "baseline | sweep | pauli2")->capture_default_str();
  auto* wit_part = witness->add_option("--partition", wit.partition, "Subsystem B");
  witness->add_option("--batches", wit.batches,
                      "Split shots into batches; tolerance = 3 standard errors")
      ->capture_default_str();
  witness->add_option("--tol", wit.tol, "Minimum certification tolerance");
  witness->add_option("--threads", wit.threads, "Worker threads (sweep only)");
  witness->add_option("--out", wit.out, "Result file ('-' for stdout)");
  witness->add_option("--format", wit.format, "csv | json")->capture_default_str();
  auto* wit_seed = witness->add_option("--seed", wit.seed, "Seed to record");
  witness->callback([&] {
    wit.partition_given = wit_part->count() > 0;
    wit.seed_given = wit_seed->count() > 0;
    action = [&] { run_witness(wit, out, err); return 0; };
  });

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Per-shot timing over an (n, m, algo) grid");
  bench_cmd->add_option("-n,--qubits", bench.qubits, "Qubit counts, e.g. 8-11")
      ->capture_default_str();
  bench_cmd->add_option("-m,--moment", bench.moments, "Moment orders, e.g. 2,3")
      ->capture_default_str();
  bench_cmd->add_option("--algo", bench.algos, "all or a list of algos")->capture_default_str();
  bench_cmd->add_option("-N,--shots", bench.shots, "Shots per point")->capture_default_str();
  bench_cmd->add_option("--reps", bench.reps, "Timed reps")->capture_default_str();
  bench_cmd->add_option("--warmup", bench.warmup, "Warmup reps")->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "RNG seed")->capture_default_str();
  bench_cmd->add_option("--state", bench.state, "State spec")->capture_default_str();
  auto* bench_part = bench_cmd->add_option("--partition", bench.partition, "Subsystem B");
  bench_cmd->add_option("--min-sample", bench.min_sample,
                        "Minimum timed seconds per sample")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Result file ('-' for stdout)");
  bench_cmd->add_option("--format", bench.format, "csv | json")->capture_default_str();
  bench_cmd->callback([&] {
    bench.partition_given = bench_part->count() > 0;
    action = [&] { run_bench_cmd(bench, out, err); return 0; };
  });

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the built-in correctness and scaling checks");
  verify->add_option("--seed", ver.seed, "Seed")->capture_default_str();
  verify->add_flag("--no-scaling", ver.no_scaling, "Skip the timing check");
  verify->add_option("-n,--qubits", ver.qubits, "Qubit counts for the timing check")
      ->capture_default_str();
  verify->add_option("--reps", ver.reps, "Timed reps")->capture_default_str();
  verify->add_option("--warmup", ver.warmup, "Warmup reps")->capture_default_str();
  verify->callback([&] { action = [&] { return run_verify_cmd(ver, out); }; });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace ptm::cli
