#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "spocs/io.hpp"
#include "spocs/scenario.hpp"

namespace spocs {
namespace {

std::size_t count_char(const std::string& s, char c) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), c));
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < s.size()) {
    const auto end = s.find('\n', start);
    out.push_back(s.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  testing::Rand rng(1);
  for (int t = 0; t < 100; ++t) {
    const double v = std::ldexp(testing::uniform(rng, -1.0, 1.0), t - 50);
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

TEST(InstanceJson, RoundTrip) {
  ScenarioSpec spec;
  spec.antennas = 3;
  spec.users = 5;
  spec.groups = 2;
  spec.gamma = 1.7;
  spec.cap = PowerCap::of(0.4);
  spec.seed = 11;
  auto inst = generate_instance(spec);
  inst.antenna_power[1] = PowerCap::unbounded();
  const std::string doc = instance_to_json(inst);
  const ProblemInstance back = parse_instance(doc);
  EXPECT_EQ(back.antennas, inst.antennas);
  EXPECT_EQ(back.users, inst.users);
  EXPECT_EQ(back.groups, inst.groups);
  EXPECT_EQ(back.group_of, inst.group_of);
  EXPECT_EQ(back.sinr_target, inst.sinr_target);
  EXPECT_EQ(back.noise_power, inst.noise_power);
  EXPECT_EQ(back.antenna_power, inst.antenna_power);
  for (std::size_t k = 0; k < inst.users; ++k) EXPECT_EQ(back.channels[k], inst.channels[k]);
  EXPECT_EQ(instance_to_json(back), doc);
  EXPECT_NE(doc.find("\"inf\""), std::string::npos);
}

TEST(InstanceJson, ScalarFieldsAndOneBasedGroups) {
  const char* doc = R"({"N": 1, "K": 2, "M": 2, "group_of": [1, 2],
    "channels": [[[1, 0]], [[0, 2]]], "gamma": 2, "sigma2": 0.5, "p": "inf"})";
  const auto inst = parse_instance(doc);
  EXPECT_EQ(inst.group_of, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(inst.sinr_target, (std::vector<double>{2.0, 2.0}));
  EXPECT_EQ(inst.noise_power, (std::vector<double>{0.5, 0.5}));
  EXPECT_FALSE(inst.antenna_power[0].bounded());
  EXPECT_EQ(inst.channels[1](0), Complex(0.0, 2.0));

  const char* numeric_cap = R"({"N": 2, "K": 1, "M": 1, "group_of": [1],
    "channels": [[[1, 0], [0, 0]]], "gamma": [1], "sigma2": [1], "p": 3})";
  const auto inst2 = parse_instance(numeric_cap);
  EXPECT_EQ(inst2.antenna_power[1], PowerCap::of(3.0));
}

TEST(InstanceJson, RejectsMalformedInput) {
  const std::string good = R"({"N": 1, "K": 1, "M": 1, "group_of": [1],
    "channels": [[[1, 0]]], "gamma": 1, "sigma2": 1, "p": "inf"})";
  EXPECT_NO_THROW(parse_instance(good));
  const std::vector<std::string> bad = {
      "not json",
      "[1, 2]",
      R"({"K": 1, "M": 1, "group_of": [1], "channels": [[[1, 0]]], "gamma": 1, "sigma2": 1, "p": 1})",
      R"({"N": 1, "K": 1, "M": 1, "group_of": [2], "channels": [[[1, 0]]], "gamma": 1, "sigma2": 1, "p": 1})",
      R"({"N": 1, "K": 1, "M": 1, "group_of": [0], "channels": [[[1, 0]]], "gamma": 1, "sigma2": 1, "p": 1})",
      R"({"N": 2, "K": 1, "M": 1, "group_of": [1], "channels": [[[1, 0]]], "gamma": 1, "sigma2": 1, "p": 1})",
      R"({"N": 1, "K": 1, "M": 1, "group_of": [1], "channels": [[[1]]], "gamma": 1, "sigma2": 1, "p": 1})",
      R"({"N": 1, "K": 1, "M": 1, "group_of": [1], "channels": [[[0, 0]]], "gamma": 1, "sigma2": 1, "p": 1})",
      R"({"N": 1, "K": 1, "M": 1, "group_of": [1], "channels": [[[1, 0]]], "gamma": -1, "sigma2": 1, "p": 1})",
      R"({"N": 1, "K": 1, "M": 1, "group_of": [1], "channels": [[[1, 0]]], "gamma": 1, "sigma2": 0, "p": 1})",
      R"({"N": 1, "K": 1, "M": 1, "group_of": [1], "channels": [[[1, 0]]], "gamma": 1, "sigma2": 1, "p": "big"})",
      R"({"N": 1, "K": 1, "M": 1, "group_of": [1], "channels": [[[1, 0]]], "gamma": 1, "sigma2": 1, "p": 0})",
      R"({"N": 1, "K": 1, "M": 2, "group_of": [1], "channels": [[[1, 0]]], "gamma": 1, "sigma2": 1, "p": 1})",
      R"({"N": 0, "K": 1, "M": 1, "group_of": [1], "channels": [[]], "gamma": 1, "sigma2": 1, "p": 1})",
  };
  for (const auto& doc : bad) EXPECT_THROW(parse_instance(doc), FormatError) << doc;
}

TEST(BeamformerJson, RoundTrip) {
  testing::Rand rng(2);
  Beamformer w;
  for (int m = 0; m < 3; ++m) w.vectors.push_back(testing::random_vector(rng, 4));
  const std::string doc = beamformer_to_json(w);
  const Beamformer back = parse_beamformer(doc);
  ASSERT_EQ(back.groups(), 3u);
  for (int m = 0; m < 3; ++m) EXPECT_EQ(back.vectors[m], w.vectors[m]);
  EXPECT_THROW(parse_beamformer("{\"w\": []}"), FormatError);
  EXPECT_THROW(parse_beamformer("{\"w\": [[[1, 0]], [[1, 0], [2, 0]]]}"), FormatError);
}

TEST(TraceCsv, SchemaIsStable) {
  SolverTrace trace;
  TraceRecord r;
  r.n = 10;
  r.objective = 1.5;
  r.rel_step = std::numeric_limits<double>::infinity();
  r.elapsed_ns = 123;
  trace.records = {r, r};
  const auto ls = lines(trace_to_csv(trace));
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], kTraceHeader);
  for (const auto& l : ls) EXPECT_EQ(count_char(l, ','), 7u);
  EXPECT_EQ(ls[1], "10,1.5,0,0,0,0,inf,123");
}

TEST(EvalCsv, SchemaIsStable) {
  EvalRow row;
  row.seed = 7;
  row.antennas = 20;
  row.users = 20;
  row.groups = 2;
  row.gamma_db = 0.0;
  row.sinr_min_rho_db = -0.25;
  row.total_power = 2.5;
  row.rho = 0.5;
  row.p_sdr = 1.25;
  row.solver_iters = 321;
  row.solve_ns = 99;
  EXPECT_EQ(eval_to_csv_row(row), "7,20,20,2,0,-0.25,2.5,0.5,1.25,321,99");
  EXPECT_EQ(count_char(kEvalHeader, ','), 10u);
}

TEST(OracleJson, WritesNonFiniteValuesAsStrings) {
  SdrEstimate est;
  est.value = -std::numeric_limits<double>::infinity();
  est.upper_bound = 2.0;
  const std::string doc = sdr_estimate_to_json(est);
  EXPECT_NE(doc.find("\"-inf\""), std::string::npos);
  EXPECT_NE(doc.find("\"reliable\": false"), std::string::npos);
}

}  // namespace
}  // namespace spocs
