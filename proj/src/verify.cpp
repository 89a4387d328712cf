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

#include "ptm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "ptm/bench.hpp"
#include "ptm/estimators.hpp"
#include "ptm/io.hpp"
#include "ptm/oracle.hpp"
#include "ptm/simulator.hpp"
#include "ptm/witness.hpp"

namespace ptm {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1.0);
}

double rel(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1.0);
}

double rel_frobenius(const DenseMatrix& got, const DenseMatrix& want) {
  const double scale = want.norm();
  const double diff = (got - want).norm();
  return scale > 0 ? diff / scale : diff;
}

int draw(ShotRng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

ShotRecord random_shot(int n, ShotRng& rng) {
  std::vector<PauliAxis> axes(n);
  std::vector<std::uint8_t> bits(n);
  for (int j = 0; j < n; ++j) {
    axes[j] = static_cast<PauliAxis>(1 + rng.below(3));
    bits[j] = static_cast<std::uint8_t>(rng.below(2));
  }
  return ShotRecord(std::move(axes), std::move(bits));
}

std::vector<ShotRecord> random_shots(int n, int count, ShotRng& rng) {
  std::vector<ShotRecord> out;
  out.reserve(count);
  for (int t = 0; t < count; ++t) out.push_back(random_shot(n, rng));
  return out;
}

Bipartition random_partition(int n, ShotRng& rng) {
  return Bipartition(n, rng.below(std::uint64_t{1} << n));
}

template <typename F>
CheckResult timed(std::string id, std::string name, F&& body) {
  CheckResult r;
  r.id = std::move(id);
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

CheckResult check_oracle_equivalence(const VerifyOptions& opt) {
  return timed("1", "sweep = baseline = brute force", [&](CheckResult& r) {
    ShotRng rng(opt.seed, 1);
    double worst_terms = 0.0, worst_brute = 0.0;
    for (int c = 0; c < opt.cases; ++c) {
      const int n = draw(rng, 1, 5);
      const int m = draw(rng, 1, 5);
      const int count = draw(rng, m, 15);
      const Bipartition part = random_partition(n, rng);
      const auto shots = random_shots(n, count, rng);

      MomentAccumulator base(n, m), sweep(n, m);
      for (const auto& s : shots) {
        const FactorizedSnapshot snap = snapshot_from_shot(s, part);
        ingest_baseline(base, snap);
        ingest_sweep(sweep, snap);
      }
      for (int k = 1; k <= m; ++k) {
        worst_terms = std::max(worst_terms, rel_frobenius(sweep.term(k), base.term(k)));
      }
      const Complex brute = ustat_bruteforce(shots, part, m);
      const double cnm = binomial(base.shots(), m);
      worst_brute = std::max({worst_brute, rel(base.term(m).trace() / cnm, brute),
                              rel(sweep.term(m).trace() / cnm, brute)});
    }
    r.passed = worst_terms <= 1e-10 && worst_brute <= 1e-9;
    r.detail = std::to_string(opt.cases) + " cases; max rel Frobenius(A_r) " +
               sci(worst_terms) + " (<= 1e-10), max rel vs brute force " +
               sci(worst_brute) + " (<= 1e-9)";
  });
}

CheckResult check_pauli2_equivalence(const VerifyOptions& opt) {
  return timed("2", "pauli2 = baseline at m = 2", [&](CheckResult& r) {
    ShotRng rng(opt.seed, 2);
    double worst = 0.0;
    for (int c = 0; c < opt.cases; ++c) {
      const int n = draw(rng, 1, 4);
      const int count = draw(rng, 2, 30);
      const Bipartition part = random_partition(n, rng);
      MomentAccumulator base(n, 2);
      PauliAccumulator pauli(n);
      for (const auto& s : random_shots(n, count, rng)) {
        ingest_baseline(base, snapshot_from_shot(s, part));
        ingest_pauli2(pauli, s, part);
      }
      worst = std::max(worst, rel(estimate_p2(pauli), estimate(base, 2).value));
    }
    r.passed = worst <= 1e-9;
    r.detail = std::to_string(opt.cases) + " cases; max rel diff " + sci(worst) +
               " (<= 1e-9)";
  });
}

CheckResult check_identities(const VerifyOptions& opt) {
  return timed("3", "identity suite", [&](CheckResult& r) {
    ShotRng rng(opt.seed, 3);

    double worst_p1 = 0.0;
    for (int stream = 0; stream < 100; ++stream) {
      const int n = draw(rng, 1, 6);
      const Bipartition part = random_partition(n, rng);
      OnlineEstimator sweep(EstimatorKind::Sweep, part, 2);
      OnlineEstimator pauli(EstimatorKind::Pauli2, part, 2);
      const int count = draw(rng, 1, 20);
      for (int t = 0; t < count; ++t) {
        const ShotRecord s = random_shot(n, rng);
        sweep.ingest(s);
        pauli.ingest(s);
        worst_p1 = std::max({worst_p1, std::abs(sweep.estimate(1).value - 1.0),
                             std::abs(pauli.estimate(1).value - 1.0)});
      }
    }

    double worst_tr = 0.0;
    for (int n = 1; n <= 6; ++n) {
      for (int t = 0; t < 20; ++t) {
        const DenseMatrix s =
            kron_expand(snapshot_from_shot(random_shot(n, rng), random_partition(n, rng)));
        const Complex tr2 = trace(matmul(s, s));
        worst_tr = std::max(worst_tr, std::abs(tr2 - Complex(pow5(n))) / pow5(n));
      }
    }

    double worst_sq = 0.0;
    for (int n = 1; n <= 12; ++n) {
      for (int t = 0; t < 20; ++t) {
        double sq = 0.0;
        for_each_support_term(random_shot(n, rng), random_partition(n, rng),
                              [&](std::uint64_t, double v) { sq += v * v; });
        worst_sq = std::max(
            worst_sq, std::abs(sq - pow5(n) / static_cast<double>(dim_for_qubits(n))));
      }
    }

    double worst_u = 0.0;
    for (int c = 0; c < 20; ++c) {
      const int n = draw(rng, 1, 4);
      const Bipartition part = random_partition(n, rng);
      const auto shots = random_shots(n, draw(rng, 1, 10), rng);
      MomentAccumulator acc(n, 1);
      PauliAccumulator pauli(n);
      for (const auto& s : shots) {
        ingest_sweep(acc, snapshot_from_shot(s, part));
        ingest_pauli2(pauli, s, part);
      }
      const double d = static_cast<double>(dim_for_qubits(n));
      for (std::uint64_t q = 0; q < pow4(n); ++q) {
        const Complex proj = trace(matmul(pauli_string_matrix(n, q), acc.term(1))) / d;
        worst_u = std::max(worst_u, std::abs(proj - Complex(pauli.coefficients()[q])));
      }
    }

    r.passed = worst_p1 <= 1e-12 && worst_tr <= 1e-12 && worst_sq <= 1e-12 &&
               worst_u <= 1e-10;
    r.detail = "|p1-1| " + sci(worst_p1) + ", rel tr(S^2)-5^n " + sci(worst_tr) +
               ", |sum v^2 - 5^n/d| " + sci(worst_sq) + ", |u_Q - tr(QA_1)/d| " +
               sci(worst_u);
  });
}

CheckResult check_exact_witness(const VerifyOptions&) {
  return timed("4", "exact witness values", [&](CheckResult& r) {
    const Bipartition part(2, 0b10);
    auto moments = [&](const DensityMatrix& rho, int m) {
      std::vector<double> p;
      for (int k = 1; k <= m; ++k) p.push_back(pt_moment_exact(rho, part, k));
      return p;
    };
    const auto bell = moments(build_state(StateSpec::bell()), 3);
    const auto e = newton_girard(bell);
    const Verdict v = certify(e, 1e-12);
    bool ok = std::abs(bell[1] - 1.0) <= 1e-12 && std::abs(bell[2] - 0.25) <= 1e-12 &&
              std::abs(e[2] + 0.25) <= 1e-12 && v == Verdict::entangled(3);

    double worst_w = 0.0, worst_spec = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double q = i / 20.0;
      const DensityMatrix w = build_state(StateSpec::werner(q));
      worst_w = std::max(worst_w, std::abs(pt_moment_exact(w, part, 2) - (1 + 3 * q * q) / 4));
      const Eigen::VectorXd ev = pt_spectrum(w, part);
      std::vector<double> want{(1 - 3 * q) / 4, (1 + q) / 4, (1 + q) / 4, (1 + q) / 4};
      std::sort(want.begin(), want.end());
      for (int k = 0; k < 4; ++k) worst_spec = std::max(worst_spec, std::abs(ev(k) - want[k]));
    }
    ok = ok && worst_w <= 1e-12 && worst_spec <= 1e-12;

    const DensityMatrix weak = build_state(StateSpec::werner(0.2));
    bool weak_ok = true;
    for (int m = 1; m <= 4; ++m) {
      weak_ok = weak_ok && !certify(newton_girard(moments(weak, m)), 1e-12).entangled();
    }
    r.passed = ok && weak_ok;
    r.detail = "Bell p2=" + sci(bell[1]) + " p3=" + sci(bell[2]) + " e3=" + sci(e[2]) +
               " verdict=" + to_string(v) + "; Werner max|p2 err| " + sci(worst_w) +
               ", spectrum err " + sci(worst_spec) + "; Werner(0.2) up to m=4 " +
               (weak_ok ? "inconclusive" : "CERTIFIED");
  });
}

CheckResult check_unbiasedness(const VerifyOptions& opt) {
  return timed("5", "unbiasedness of p2 on Bell pairs", [&](CheckResult& r) {
    const DensityMatrix bell = build_state(StateSpec::bell());
    const Bipartition part(2, 0b10);
    ShotRng rng(opt.seed, 5);
    double sum = 0.0, sq = 0.0;
    OnlineEstimator est(EstimatorKind::Sweep, part, 2);
    for (int run = 0; run < opt.bell_runs; ++run) {
      est.reset();
      for (const auto& s : sample_shots(bell, 2, rng)) est.ingest(s);
      const double v = est.estimate(2).value;
      sum += v;
      sq += v * v;
    }
    const double runs = opt.bell_runs;
    const double mean = sum / runs;
    const double sd = std::sqrt(std::max(0.0, (sq - runs * mean * mean) / (runs - 1)));
    const double se = sd / std::sqrt(runs);
    const double z = std::abs(mean - 1.0) / se;
    r.passed = z <= 4.0;
    r.detail = std::to_string(opt.bell_runs) + " runs of N=2; mean " + sci(mean) +
               ", SE " + sci(se) + ", |z| " + sci(z) + " (<= 4)";
  });
}

CheckResult check_scaling(const VerifyOptions& opt) {
  return timed("6", "scaling trends", [&](CheckResult& r) {
    BenchConfig cfg;
    cfg.qubits = opt.scaling_qubits;
    cfg.orders = {2};
    cfg.shots = 10;
    cfg.reps = opt.scaling_reps;
    cfg.warmup = opt.scaling_warmup;
    cfg.threads = 1;
    cfg.seed = opt.seed;
    const auto points = run_bench(cfg);

    // Round-trip through the CSV format, as an external consumer would.
    std::vector<ResultRecord> records;
    for (const auto& p : points) records.push_back(to_record(p, cfg.shots, cfg.seed));
    std::stringstream csv;
    format_results(csv, records, ResultFormat::Csv);
    const auto parsed = parse_results(csv, ResultFormat::Csv);

    std::map<std::string, std::pair<std::vector<int>, std::vector<double>>> series;
    for (const auto& rec : parsed) {
      series[rec.algo].first.push_back(rec.n);
      series[rec.algo].second.push_back(rec.seconds_per_shot);
    }
    const int top = *std::max_element(cfg.qubits.begin(), cfg.qubits.end());
    auto at_top = [&](const std::string& algo) {
      const auto& [ns, ts] = series.at(algo);
      return ts[std::find(ns.begin(), ns.end(), top) - ns.begin()];
    };
    const double tp = at_top("pauli2"), ts = at_top("sweep"), tb = at_top("baseline");
    const bool ordered = tp < ts && ts < tb;

    struct Band {
      const char* algo;
      double lo, hi;
    };
    bool slopes_ok = true;
    std::string slopes;
    for (const Band& b : {Band{"baseline", 2.5, 3.5}, Band{"sweep", 1.7, 2.6},
                          Band{"pauli2", 0.6, 1.5}}) {
      const auto& [ns, tsec] = series.at(b.algo);
      const double s = fit_log2_slope(ns, tsec);
      slopes_ok = slopes_ok && s >= b.lo && s <= b.hi;
      slopes += std::string(b.algo) + " " + sci(s) + " in [" + sci(b.lo) + "," +
                sci(b.hi) + "] ";
    }
    r.passed = ordered && slopes_ok;
    r.detail = "n=" + std::to_string(top) + " s/shot pauli2 " + sci(tp) + " < sweep " +
               sci(ts) + " < baseline " + sci(tb) + (ordered ? "" : " VIOLATED") +
               "; slopes " + slopes;
  });
}

CheckResult check_negative_control(const VerifyOptions&) {
  return timed("7", "negative control: ascending update", [&](CheckResult& r) {
    const std::vector<std::pair<Bipartition, std::vector<ShotRecord>>> fixtures{
        {Bipartition::empty(1),
         {ShotRecord({PauliAxis::Z}, {0}), ShotRecord({PauliAxis::Z}, {0}),
          ShotRecord({PauliAxis::Z}, {1})}},
        {Bipartition(2, 0b10),
         {ShotRecord({PauliAxis::X, PauliAxis::Y}, {0, 1}),
          ShotRecord({PauliAxis::Y, PauliAxis::Y}, {1, 1}),
          ShotRecord({PauliAxis::Z, PauliAxis::X}, {0, 0})}}};
    double worst = 0.0;
    for (const auto& [part, shots] : fixtures) {
      MomentAccumulator acc(part.num_qubits(), 2);
      for (const auto& s : shots) {
        testing::ingest_baseline_ascending(acc, snapshot_from_shot(s, part));
      }
      worst = std::max(worst, rel(estimate(acc, 2).value,
                                  ustat_bruteforce(shots, part, 2).real()));
    }
    r.passed = worst > 1e-3;
    r.detail = "max rel error of ascending update vs brute force " + sci(worst) +
               " (> 1e-3 expected)";
  });
}

CheckResult check_tampered_file(const VerifyOptions& opt) {
  return timed("T", "tampered shot file still consistent", [&](CheckResult& r) {
    const DensityMatrix rho = build_state(StateSpec::ghz(3));
    ShotRng rng(opt.seed, 8);
    const auto shots = sample_shots(rho, 8, rng);
    std::ostringstream out;
    format_shots(out, 3, shots);
    std::string text = out.str();
    // First outcome character of the third shot line.
    std::size_t pos = 0;
    for (int line = 0; line < 3; ++line) pos = text.find('\n', pos) + 1;
    pos = text.find(' ', pos) + 1;
    text[pos] = text[pos] == '0' ? '1' : '0';
    std::istringstream in(text);
    const ShotFile tampered = parse_shots(in);

    const Bipartition part = Bipartition::upper_half(3);
    OnlineEstimator est(EstimatorKind::Sweep, part, 3);
    for (const auto& s : tampered.shots) est.ingest(s);
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m) {
      worst = std::max(worst, rel(est.estimate(m).value,
                                  ustat_bruteforce(tampered.shots, part, m).real()));
    }
    const bool changed = tampered.shots != shots;
    r.passed = changed && worst <= 1e-9;
    r.detail = std::string(changed ? "bit flipped" : "NO CHANGE") +
               "; max rel estimator vs brute force " + sci(worst);
  });
}

std::vector<CheckResult> run_verify(const VerifyOptions& opt,
                                    const CheckListener& on_result) {
  using Check = CheckResult (*)(const VerifyOptions&);
  std::vector<Check> checks{check_oracle_equivalence, check_pauli2_equivalence,
                            check_identities,         check_exact_witness,
                            check_unbiasedness};
  if (opt.include_scaling) checks.push_back(check_scaling);
  checks.push_back(check_negative_control);
  checks.push_back(check_tampered_file);

  std::vector<CheckResult> out;
  for (Check c : checks) {
    out.push_back(c(opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

void print_check(std::ostream& out, const CheckResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
  out << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << secs
      << ") " << r.detail << '\n';
}

}  // namespace ptm
