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

#include "ptm/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ptm {

namespace {

using nlohmann::json;

constexpr std::string_view kPartitionNote =
    "partition is a bitmask over qubits with qubit 1 = bit 0";

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

/// Parses "<magic> v1 n=<int>"; returns n.
int parse_header(const std::string& line, std::string_view magic) {
  const std::string prefix = std::string(magic) + " v1 n=";
  if (line.rfind(prefix, 0) != 0) {
    throw ParseError("malformed header, expected '" + prefix + "<int>'", 1, 1);
  }
  const char* first = line.data() + prefix.size();
  const char* last = line.data() + line.size();
  int n = 0;
  const auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("malformed qubit count in header", 1,
                     static_cast<int>(prefix.size()) + 1);
  }
  if (n < 1 || n > 63) {
    throw ParseError("qubit count must be in [1, 63]", 1,
                     static_cast<int>(prefix.size()) + 1);
  }
  return n;
}

std::uint64_t parse_u64_field(std::string_view s, std::string_view name) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad integer for " + std::string(name) + ": '" +
                         std::string(s) + "'",
                     0, 0);
  }
  return v;
}

double parse_real_field(std::string_view s, std::string_view name) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad real for " + std::string(name) + ": '" +
                         std::string(s) + "'",
                     0, 0);
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string join_reals(std::span<const double> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += format_real(v[i]);
  }
  return s;
}

std::vector<double> parse_real_list(std::string_view s, std::string_view name) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (auto part : split(s, ';')) out.push_back(parse_real_field(part, name));
  return out;
}

constexpr std::array<std::string_view, 12> kColumns = {
    "n",       "m",             "algo",    "N",        "partition", "p_hat",
    "im_diagnostic", "moments", "e_values", "verdict", "seed",      "seconds_per_shot"};

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ShotFile parse_shots(std::istream& in) {
  ShotFile file;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty shot file, missing header", 1, 1);
  strip_cr(line);
  file.n = parse_header(line, "shots");
  const int n = file.n;

  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (!line.empty() && line[0] == '#') {
      file.comments.push_back(line.substr(1));
      continue;
    }
    std::vector<PauliAxis> axes;
    std::vector<std::uint8_t> bits;
    axes.reserve(n);
    bits.reserve(n);
    std::size_t col = 0;
    for (; col < line.size() && line[col] != ' '; ++col) {
      const char c = line[col];
      if (c != 'X' && c != 'Y' && c != 'Z') {
        throw ParseError(std::string("bad basis character '") + c + "'", lineno,
                         static_cast<int>(col) + 1);
      }
      axes.push_back(axis_from_char(c));
    }
    if (static_cast<int>(axes.size()) != n) {
      throw ParseError("length mismatch: basis string has " +
                           std::to_string(axes.size()) + " characters, expected " +
                           std::to_string(n),
                       lineno, static_cast<int>(col) + 1);
    }
    if (col >= line.size()) {
      throw ParseError("missing outcome string", lineno, static_cast<int>(col) + 1);
    }
    ++col;  // the single separating space
    const std::size_t bits_start = col;
    for (; col < line.size(); ++col) {
      const char c = line[col];
      if (c != '0' && c != '1') {
        throw ParseError(std::string("bad outcome character '") + c + "'", lineno,
                         static_cast<int>(col) + 1);
      }
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (static_cast<int>(bits.size()) != n) {
      throw ParseError("length mismatch: outcome string has " +
                           std::to_string(bits.size()) + " characters, expected " +
                           std::to_string(n),
                       lineno, static_cast<int>(bits_start) + 1);
    }
    file.shots.emplace_back(std::move(axes), std::move(bits));
  }
  return file;
}

ShotFile read_shots(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_shots(in);
}

void format_shots(std::ostream& out, int n, std::span<const ShotRecord> shots,
                  std::span<const std::string> comments) {
  out << "shots v1 n=" << n << '\n';
  for (const auto& c : comments) out << '#' << c << '\n';
  std::string line(static_cast<std::size_t>(2 * n + 1), ' ');
  for (const ShotRecord& s : shots) {
    if (s.num_qubits() != n) {
      throw DimensionMismatch("shot with n=" + std::to_string(s.num_qubits()) +
                              " in an n=" + std::to_string(n) + " file");
    }
    for (int j = 1; j <= n; ++j) {
      line[j - 1] = axis_char(s.axis(j));
      line[n + j] = static_cast<char>('0' + s.bit(j));
    }
    out << line << '\n';
  }
}

void write_shots(const std::filesystem::path& path, int n,
                 std::span<const ShotRecord> shots,
                 std::span<const std::string> comments) {
  auto out = open_out(path);
  format_shots(out, n, shots, comments);
  finish(out, path);
}

DensityMatrix parse_density_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty density file, missing header", 1, 1);
  strip_cr(line);
  const int n = parse_header(line, "density");
  if (n > kDefaultDenseLimit) {
    throw SizeLimitExceeded("density file n=" + std::to_string(n) +
                            " exceeds the dense limit");
  }
  const Index d = dim_for_qubits(n);
  DenseMatrix rho(d, d);
  int lineno = 1;
  Index row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (!line.empty() && line[0] == '#') continue;
    if (row == d) throw ParseError("extra data row", lineno, 1);
    std::istringstream fields(line);
    std::string tok;
    Index count = 0;
    double re = 0.0;
    while (fields >> tok) {
      double v = 0.0;
      try {
        v = parse_real_field(tok, "matrix entry");
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno, 0);
      }
      if (count >= 2 * d) throw ParseError("too many entries in row", lineno, 0);
      if (count % 2 == 0) {
        re = v;
      } else {
        rho(row, count / 2) = Complex(re, v);
      }
      ++count;
    }
    if (count != 2 * d) {
      throw ParseError("row has " + std::to_string(count) + " reals, expected " +
                           std::to_string(2 * d),
                       lineno, 0);
    }
    ++row;
  }
  if (row != d) {
    throw ParseError("expected " + std::to_string(d) + " rows, got " +
                         std::to_string(row),
                     lineno, 0);
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix read_density_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_density_matrix(in);
}

void format_density_matrix(std::ostream& out, const DensityMatrix& rho) {
  out << "density v1 n=" << rho.num_qubits() << '\n';
  const DenseMatrix& m = rho.matrix();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_real(m(r, c).real()) << ' ' << format_real(m(r, c).imag());
    }
    out << '\n';
  }
}

void write_density_matrix(const std::filesystem::path& path,
                          const DensityMatrix& rho) {
  auto out = open_out(path);
  format_density_matrix(out, rho);
  finish(out, path);
}

ResultFormat result_format_from_string(std::string_view s) {
  if (s == "csv") return ResultFormat::Csv;
  if (s == "json" || s == "structured") return ResultFormat::Structured;
  throw InvalidArgument("unknown result format '" + std::string(s) +
                        "' (expected csv or json)");
}

std::span<const std::string_view> result_columns() { return kColumns; }

void format_results(std::ostream& out, std::span<const ResultRecord> records,
                    ResultFormat format) {
  if (format == ResultFormat::Csv) {
    out << "# " << kPartitionNote << '\n';
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
      if (i) out << ',';
      out << kColumns[i];
    }
    out << '\n';
    for (const ResultRecord& r : records) {
      out << r.n << ',' << r.m << ',' << r.algo << ',' << r.shots << ','
          << r.partition << ',' << format_real(r.p_hat) << ','
          << format_real(r.im_diagnostic) << ',' << join_reals(r.moments) << ','
          << join_reals(r.e_values) << ',' << to_string(r.verdict) << ','
          << r.seed << ',' << format_real(r.seconds_per_shot) << '\n';
    }
    return;
  }
  json doc;
  doc["format"] = "ptmoments-results v1";
  doc["partition_encoding"] = kPartitionNote;
  json arr = json::array();
  for (const ResultRecord& r : records) {
    arr.push_back({{"n", r.n},
                   {"m", r.m},
                   {"algo", r.algo},
                   {"N", r.shots},
                   {"partition", r.partition},
                   {"p_hat", r.p_hat},
                   {"im_diagnostic", r.im_diagnostic},
                   {"moments", r.moments},
                   {"e_values", r.e_values},
                   {"verdict", to_string(r.verdict)},
                   {"seed", r.seed},
                   {"seconds_per_shot", r.seconds_per_shot}});
  }
  doc["records"] = std::move(arr);
  out << doc.dump(2) << '\n';
}

void write_results(std::span<const ResultRecord> records,
                   const std::filesystem::path& path, ResultFormat format) {
  auto out = open_out(path);
  format_results(out, records, format);
  finish(out, path);
}

std::vector<ResultRecord> parse_results(std::istream& in, ResultFormat format) {
  std::vector<ResultRecord> records;
  if (format == ResultFormat::Structured) {
    json doc;
    try {
      doc = json::parse(in);
      for (const json& j : doc.at("records")) {
        ResultRecord r;
        r.n = j.at("n").get<int>();
        r.m = j.at("m").get<int>();
        r.algo = j.at("algo").get<std::string>();
        r.shots = j.at("N").get<std::uint64_t>();
        r.partition = j.at("partition").get<std::uint64_t>();
        r.p_hat = j.at("p_hat").get<double>();
        r.im_diagnostic = j.at("im_diagnostic").get<double>();
        r.moments = j.at("moments").get<std::vector<double>>();
        r.e_values = j.at("e_values").get<std::vector<double>>();
        r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
        r.seed = j.at("seed").get<std::uint64_t>();
        r.seconds_per_shot = j.at("seconds_per_shot").get<double>();
        records.push_back(std::move(r));
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad result document: ") + e.what(), 0, 0);
    }
    return records;
  }

  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (!line.empty() && line[0] == '#') continue;
    const auto fields = split(line, ',');
    if (!header_seen) {
      if (fields.size() != kColumns.size() ||
          !std::equal(fields.begin(), fields.end(), kColumns.begin())) {
        throw ParseError("unexpected CSV header", lineno, 1);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != kColumns.size()) {
      throw ParseError("expected " + std::to_string(kColumns.size()) +
                           " fields, got " + std::to_string(fields.size()),
                       lineno, 0);
    }
    try {
      ResultRecord r;
      r.n = static_cast<int>(parse_u64_field(fields[0], "n"));
      r.m = static_cast<int>(parse_u64_field(fields[1], "m"));
      r.algo = std::string(fields[2]);
      r.shots = parse_u64_field(fields[3], "N");
      r.partition = parse_u64_field(fields[4], "partition");
      r.p_hat = parse_real_field(fields[5], "p_hat");
      r.im_diagnostic = parse_real_field(fields[6], "im_diagnostic");
      r.moments = parse_real_list(fields[7], "moments");
      r.e_values = parse_real_list(fields[8], "e_values");
      r.verdict = verdict_from_string(std::string(fields[9]));
      r.seed = parse_u64_field(fields[10], "seed");
      r.seconds_per_shot = parse_real_field(fields[11], "seconds_per_shot");
      records.push_back(std::move(r));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno, 0);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), lineno, 0);
    }
  }
  if (!header_seen) throw ParseError("missing CSV header", lineno, 0);
  return records;
}

std::vector<ResultRecord> read_results(const std::filesystem::path& path,
                                       ResultFormat format) {
  auto in = open_in(path);
  return parse_results(in, format);
}

}  // namespace ptm
