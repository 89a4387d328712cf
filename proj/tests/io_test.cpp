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

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include <unistd.h>

#include "gtest/gtest.h"

#include "ptm/errors.hpp"
#include "ptm/simulator.hpp"
#include "test_util.hpp"

using namespace ptm;

namespace {

ShotFile parse(const std::string& text) {
  std::istringstream in(text);
  return parse_shots(in);
}

// Runs `text` through the parser and returns the error position.
std::pair<int, int> error_at(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return {0, 0};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("ptm_io_test_" + std::to_string(::getpid()) + "_" + name);
}

ResultRecord sample_record() {
  ResultRecord r;
  r.n = 4;
  r.m = 3;
  r.algo = "sweep";
  r.shots = 1000;
  r.partition = 0b1100;
  r.p_hat = 0.1 + 0.2;  // not exactly representable in short form
  r.im_diagnostic = 1.2345678901234567e-17;
  r.moments = {1.0, 0.3, -1.0 / 3.0};
  r.e_values = {1.0, 0.35, std::nextafter(0.0, 1.0)};
  r.verdict = Verdict::entangled(3);
  r.seed = 18446744073709551615ull;
  r.seconds_per_shot = 3.5e-6;
  return r;
}

}  // namespace

TEST(ShotFile, ParsesExample) {
  const ShotFile f = parse("shots v1 n=3\n# seed=4\nXYZ 010\nZZZ 111\n");
  EXPECT_EQ(f.n, 3);
  ASSERT_EQ(f.comments.size(), 1u);
  EXPECT_EQ(f.comments[0], " seed=4");
  ASSERT_EQ(f.shots.size(), 2u);
  EXPECT_EQ(f.shots[0].axis(1), PauliAxis::X);
  EXPECT_EQ(f.shots[0].axis(3), PauliAxis::Z);
  EXPECT_EQ(f.shots[0].bit(2), 1);
  EXPECT_EQ(f.shots[1].bit(1), 1);
}

TEST(ShotFile, AcceptsCrlfAndEmptyBody) {
  EXPECT_EQ(parse("shots v1 n=2\r\nXY 01\r\n").shots.size(), 1u);
  EXPECT_TRUE(parse("shots v1 n=2\n").shots.empty());
}

TEST(ShotFile, ErrorsCarryPositions) {
  EXPECT_EQ(error_at(""), std::make_pair(1, 1));
  EXPECT_EQ(error_at("shots v2 n=3\n").first, 1);
  EXPECT_EQ(error_at("shots v1 n=x\n").first, 1);
  EXPECT_EQ(error_at("shots v1 n=2\nXQ 01\n"), std::make_pair(2, 2));
  EXPECT_EQ(error_at("shots v1 n=2\nXX 01\nXYZ 010\n"), std::make_pair(3, 4));
  EXPECT_EQ(error_at("shots v1 n=2\nXY\n"), std::make_pair(2, 3));
  EXPECT_EQ(error_at("shots v1 n=2\nXY 0a\n"), std::make_pair(2, 5));
  EXPECT_EQ(error_at("shots v1 n=2\nXY 011\n"), std::make_pair(2, 4));
  EXPECT_EQ(error_at("shots v1 n=2\n# c\n\n"), std::make_pair(3, 1));
  try {
    parse("shots v1 n=2\nXQ 01\n");
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2, column 2"), std::string::npos);
  }
}

TEST(ShotFile, RoundTripThousandShots) {
  const DensityMatrix rho = build_state(StateSpec::random_pure(5, 3));
  ShotRng rng(5);
  const auto shots = sample_shots(rho, 1000, rng);
  const std::vector<std::string> comments{" seed=5", " state=random:3"};
  std::ostringstream out;
  format_shots(out, 5, shots, comments);
  std::istringstream in(out.str());
  const ShotFile f = parse_shots(in);
  EXPECT_EQ(f.n, 5);
  EXPECT_EQ(f.comments, comments);
  EXPECT_EQ(f.shots, shots);

  const auto path = temp_path("shots.txt");
  write_shots(path, 5, shots);
  EXPECT_EQ(read_shots(path).shots, shots);
  std::filesystem::remove(path);
}

TEST(ShotFile, MissingFile) {
  EXPECT_THROW(read_shots("/nonexistent/dir/shots.txt"), Error);
}

TEST(DensityFile, RoundTripIsExact) {
  const DensityMatrix rho = build_state(StateSpec::random_pure(3, 8));
  std::ostringstream out;
  format_density_matrix(out, rho);
  std::istringstream in(out.str());
  EXPECT_EQ(parse_density_matrix(in).matrix(), rho.matrix());
}

TEST(DensityFile, ParsesExampleAndRejectsBadData) {
  std::istringstream ok("density v1 n=1\n# maximally mixed\n0.5 0 0 0\n0 0 0.5 0\n");
  EXPECT_EQ(parse_density_matrix(ok).matrix(), DenseMatrix::Identity(2, 2) / 2.0);

  std::istringstream short_row("density v1 n=1\n0.5 0 0\n0 0 0.5 0\n");
  EXPECT_THROW(parse_density_matrix(short_row), ParseError);
  std::istringstream missing_row("density v1 n=1\n0.5 0 0 0\n");
  EXPECT_THROW(parse_density_matrix(missing_row), ParseError);
  std::istringstream not_a_state("density v1 n=1\n1 0 0 0\n0 0 1 0\n");
  EXPECT_THROW(parse_density_matrix(not_a_state), InvalidArgument);
}

TEST(Results, CsvRoundTripIsBitExact) {
  const std::vector<ResultRecord> records{sample_record(), ResultRecord{}};
  std::ostringstream out;
  format_results(out, records, ResultFormat::Csv);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("# partition is a bitmask over qubits with qubit 1 = bit 0", 0), 0u);
  std::istringstream in(text);
  EXPECT_EQ(parse_results(in, ResultFormat::Csv), records);
}

TEST(Results, StructuredRoundTripIsBitExact) {
  const std::vector<ResultRecord> records{sample_record(), ResultRecord{}};
  std::ostringstream out;
  format_results(out, records, ResultFormat::Structured);
  std::istringstream in(out.str());
  EXPECT_EQ(parse_results(in, ResultFormat::Structured), records);
}

TEST(Results, CsvHeaderOrder) {
  std::ostringstream out;
  format_results(out, std::vector<ResultRecord>{}, ResultFormat::Csv);
  EXPECT_NE(out.str().find("n,m,algo,N,partition,p_hat,im_diagnostic,moments,e_values,"
                           "verdict,seed,seconds_per_shot"),
            std::string::npos);
  EXPECT_EQ(result_columns().size(), 12u);
}

TEST(Results, FileRoundTripAndFormatNames) {
  const std::vector<ResultRecord> records{sample_record()};
  for (const char* name : {"csv", "json", "structured"}) {
    const ResultFormat f = result_format_from_string(name);
    const auto path = temp_path(std::string("results.") + name);
    write_results(records, path, f);
    EXPECT_EQ(read_results(path, f), records);
    std::filesystem::remove(path);
  }
  EXPECT_THROW(result_format_from_string("xml"), InvalidArgument);
}

TEST(Results, MalformedInput) {
  std::istringstream bad_csv("n,m\n1,2\n");
  EXPECT_THROW(parse_results(bad_csv, ResultFormat::Csv), ParseError);
  std::istringstream bad_json("{\"records\": 3}");
  EXPECT_THROW(parse_results(bad_json, ResultFormat::Structured), ParseError);
}

TEST(FormatReal, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
    EXPECT_EQ(std::stod(format_real(v)), v);
  }
}
