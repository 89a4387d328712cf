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

#include "ptm/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ptm/io.hpp"

namespace ptm {

namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

void require_two_qubits(std::string_view name, int n) {
  if (n != 2) {
    throw InvalidArgument(std::string(name) + " is a 2-qubit state, got n=" +
                          std::to_string(n));
  }
}

DenseMatrix projector(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

}  // namespace

StateSpec StateSpec::parse(std::string_view text, int n) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  if (head == "file") {
    if (arg.empty()) throw InvalidArgument("file state needs a path: file:<path>");
    return from_file(std::string(arg));
  }
  if (n < 1) throw InvalidArgument("qubit count must be positive");
  if (head == "bell" && !has_arg) {
    require_two_qubits("bell", n);
    return bell();
  }
  if (head == "ghz" && !has_arg) return ghz(n);
  if ((head == "zero" || head == "product") && !has_arg) return product_zero(n);
  if (head == "werner" && has_arg) {
    require_two_qubits("werner", n);
    const double q = parse_double(arg, "Werner weight");
    if (!(q >= 0.0 && q <= 1.0)) {
      throw InvalidArgument("Werner weight must lie in [0, 1], got " + std::string(arg));
    }
    return werner(q);
  }
  if (head == "random" && has_arg) return random_pure(n, parse_u64(arg, "seed"));
  throw InvalidArgument("unknown state spec '" + std::string(text) +
                        "' (expected bell, ghz, werner:<q>, zero, random:<seed>, "
                        "file:<path>)");
}

std::string StateSpec::to_string() const {
  switch (kind) {
    case Kind::Bell: return "bell";
    case Kind::Ghz: return "ghz";
    case Kind::Werner: {
      std::ostringstream os;
      os.precision(17);
      os << "werner:" << q;
      return os.str();
    }
    case Kind::ProductZero: return "zero";
    case Kind::RandomPure: return "random:" + std::to_string(seed);
    case Kind::FromFile: return "file:" + path;
  }
  return "?";
}

DensityMatrix build_state(const StateSpec& spec, int dense_limit) {
  if (spec.kind == StateSpec::Kind::FromFile) {
    DensityMatrix rho = read_density_matrix(spec.path);
    check_dense_limit(rho.num_qubits(), dense_limit);
    return rho;
  }
  if (spec.n < 1) throw InvalidArgument("qubit count must be positive");
  check_dense_limit(spec.n, dense_limit);
  const Index d = dim_for_qubits(spec.n);
  const double root_half = std::sqrt(0.5);

  switch (spec.kind) {
    case StateSpec::Kind::Bell: {
      require_two_qubits("bell", spec.n);
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
      psi(0) = psi(3) = root_half;
      return DensityMatrix(projector(psi));
    }
    case StateSpec::Kind::Ghz: {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
      psi(0) = psi(d - 1) = root_half;
      return DensityMatrix(projector(psi));
    }
    case StateSpec::Kind::Werner: {
      require_two_qubits("werner", spec.n);
      if (!(spec.q >= 0.0 && spec.q <= 1.0)) {
        throw InvalidArgument("Werner weight must lie in [0, 1]");
      }
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
      psi(0) = psi(3) = root_half;
      DenseMatrix rho = spec.q * projector(psi) +
                        ((1.0 - spec.q) / 4.0) * DenseMatrix::Identity(4, 4);
      return DensityMatrix(std::move(rho));
    }
    case StateSpec::Kind::ProductZero: {
      DenseMatrix rho = DenseMatrix::Zero(d, d);
      rho(0, 0) = 1.0;
      return DensityMatrix(std::move(rho));
    }
    case StateSpec::Kind::RandomPure: {
      // Normalized complex Gaussian vector: Haar-distributed pure state.
      ShotRng rng(spec.seed, 0x5354415445ull);  // "STATE"
      Eigen::VectorXcd psi(d);
      for (Index i = 0; i < d; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        psi(i) = Complex(re, im);
      }
      psi /= psi.norm();
      DenseMatrix rho = projector(psi);
      rho = 0.5 * (rho + rho.adjoint()).eval();
      return DensityMatrix(std::move(rho));
    }
    case StateSpec::Kind::FromFile: break;
  }
  throw InvalidArgument("unhandled state kind");
}

ShotRng::ShotRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double ShotRng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t ShotRng::below(std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

double ShotRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double local_expectation(const DenseMatrix& m, const Matrix2c& g, int qubit) {
  check_square(m);
  const int n = qubits_for_dim(m.rows());
  if (qubit < 1 || qubit > n) throw IndexOutOfRange("qubit out of range");
  const Index d = m.rows();
  const Index stride = dim_for_qubits(n - qubit);
  // tr(L M) = sum_x sum_b G(x_j, b) M(x with bit j = b, x).
  Complex acc = 0.0;
  for (Index x = 0; x < d; ++x) {
    const int xj = (x & stride) ? 1 : 0;
    const Index x0 = x & ~stride;
    const Index x1 = x | stride;
    acc += g(xj, 0) * m(x0, x) + g(xj, 1) * m(x1, x);
  }
  return acc.real();
}

ShotRecord sample_outcomes(const DensityMatrix& rho,
                           std::vector<PauliAxis> axes, ShotRng& rng) {
  const int n = rho.num_qubits();
  if (static_cast<int>(axes.size()) != n) {
    throw DimensionMismatch("need one axis per qubit");
  }
  DenseMatrix cur = rho.matrix();
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const Matrix2c p = pauli_matrix(axes[j - 1]);
    const Matrix2c proj0 = 0.5 * (Matrix2c::Identity() + p);
    const Matrix2c proj1 = 0.5 * (Matrix2c::Identity() - p);

    double p0 = local_expectation(cur, proj0, j);
    if (!(p0 >= -1e-9 && p0 <= 1.0 + 1e-9)) {
      std::ostringstream os;
      os << "conditional Born probability " << p0 << " outside [0, 1] at qubit " << j;
      throw NumericalError(os.str());
    }
    p0 = std::clamp(p0, 0.0, 1.0);

    // Rounding can select a branch of (numerically) zero weight; redraw.
    int b = 0;
    double pb = 0.0;
    do {
      b = rng.uniform() < p0 ? 0 : 1;
      pb = b == 0 ? p0 : 1.0 - p0;
    } while (pb < 1e-14);

    const Matrix2c& proj = b == 0 ? proj0 : proj1;
    left_sweep(cur, proj, j);
    right_sweep(cur, proj, j);
    cur *= 1.0 / pb;
    bits[j - 1] = static_cast<std::uint8_t>(b);
  }
  return ShotRecord(std::move(axes), std::move(bits));
}

ShotRecord sample_shot(const DensityMatrix& rho, ShotRng& rng) {
  std::vector<PauliAxis> axes(static_cast<std::size_t>(rho.num_qubits()));
  for (auto& a : axes) a = static_cast<PauliAxis>(1 + rng.below(3));
  return sample_outcomes(rho, std::move(axes), rng);
}

std::vector<ShotRecord> sample_shots(const DensityMatrix& rho,
                                     std::uint64_t count, ShotRng& rng) {
  std::vector<ShotRecord> out;
  out.reserve(count);
  for (std::uint64_t t = 0; t < count; ++t) out.push_back(sample_shot(rho, rng));
  return out;
}

}  // namespace ptm
