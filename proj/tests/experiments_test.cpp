// Copyright 2026 The edgemine Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "edgemine/experiments.hpp"
#include "edgemine/io.hpp"

namespace {

using namespace edgemine;
namespace fs = std::filesystem;

std::string Slurp(fs::path const &path)
{
  std::ifstream      in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path ScratchDir(std::string const &name)
{
  auto dir = fs::temp_directory_path() / ("edgemine_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

SweepSpec SmallSpec()
{
  SweepSpec spec;
  spec.parameter           = SweepParameter::kMeanBlockInterval;
  spec.grid                = {300, 600};
  spec.base.num_users      = 40;
  spec.base.unit_cost      = 0.002;
  spec.instances_per_point = 3;
  spec.base_seed           = 12345;
  spec.threads             = 1;
  return spec;
}

TEST(GenerateInstanceTest, DeterministicAndTruthful)
{
  BlockchainParams const bc;
  auto const             a = GenerateInstance(600, bc, 77);
  EXPECT_EQ(a, GenerateInstance(600, bc, 77));
  EXPECT_NE(a, GenerateInstance(600, bc, 78));
  ASSERT_EQ(a.size(), 600U);
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    EXPECT_EQ(a[i].id, static_cast<BidderId>(i));
    EXPECT_GE(a[i].tx_size, 0.0);
    EXPECT_LE(a[i].tx_size, 1000.0);
    EXPECT_EQ(a[i].demand, 1.0);
    EXPECT_EQ(a[i].bid, ExAnteValuation(a[i].tx_size, bc));
  }
  EXPECT_THROW(GenerateInstance(0, bc, 1), InvalidArgument);
}

TEST(GenerateInstanceTest, TransactionSizeMean)
{
  auto const roster = GenerateInstance(100000, BlockchainParams{}, 2018);
  double     sum    = 0.0;
  for (auto const &p : roster)
  {
    sum += p.tx_size;
  }
  double const mean = sum / static_cast<double>(roster.size());
  EXPECT_GE(mean, 490.0);
  EXPECT_LE(mean, 510.0);
}

TEST(RunSweepTest, SingleCell)
{
  auto spec                = SmallSpec();
  spec.grid                = {600};
  spec.instances_per_point = 1;
  auto const result        = RunSweep(spec);
  ASSERT_EQ(result.points.size(), 1U);
  ASSERT_EQ(result.means.size(), 1U);
  EXPECT_EQ(result.means[0].n_instances, 1U);
  EXPECT_EQ(result.means[0].welfare, result.points[0].welfare);
}

TEST(RunSweepTest, MeansAreRowAverages)
{
  auto spec                = SmallSpec();
  spec.instances_per_point = 7;
  auto const result        = RunSweep(spec);
  for (auto const &mean : result.means)
  {
    double      welfare = 0, winners = 0, paid = 0;
    std::size_t n = 0;
    for (auto const &p : result.points)
    {
      if (p.grid_value == mean.grid_value)
      {
        welfare += p.welfare;
        winners += static_cast<double>(p.winner_count);
        paid += p.total_payment;
        ++n;
      }
    }
    ASSERT_EQ(n, mean.n_instances);
    EXPECT_NEAR(mean.welfare, welfare / n, 1e-12);
    EXPECT_NEAR(mean.winner_count, winners / n, 1e-12);
    EXPECT_NEAR(mean.total_payment, paid / n, 1e-12);
  }
}

TEST(RunSweepTest, ParallelMatchesSerial)
{
  auto spec                = SmallSpec();
  spec.instances_per_point = 10;
  auto const serial        = RunSweep(spec);
  spec.threads             = 4;
  auto const parallel      = RunSweep(spec);
  EXPECT_EQ(serial.points, parallel.points);
  EXPECT_EQ(serial.means, parallel.means);
  EXPECT_EQ(PointsCsv(serial), PointsCsv(parallel));
}

TEST(RunSweepTest, GridPointsAreSeededIndependently)
{
  auto       spec   = SmallSpec();
  auto const before = RunSweep(spec);
  spec.grid[1]      = 900;
  auto const after  = RunSweep(spec);
  for (std::size_t i = 0; i < spec.instances_per_point; ++i)
  {
    EXPECT_EQ(before.points[i], after.points[i]);
  }
}

TEST(RunSweepTest, RejectsInvalidSpecs)
{
  auto spec = SmallSpec();
  spec.grid = {};
  EXPECT_THROW(RunSweep(spec), InvalidArgument);
  spec.grid = {600, 600};
  EXPECT_THROW(RunSweep(spec), InvalidArgument);
  spec.grid                = {600};
  spec.instances_per_point = 0;
  EXPECT_THROW(RunSweep(spec), InvalidArgument);
  spec                = SmallSpec();
  spec.parameter      = SweepParameter::kNumUsers;
  spec.grid           = {10.5};
  EXPECT_THROW(RunSweep(spec), InvalidArgument);
  spec.parameter = SweepParameter::kMeanBlockInterval;
  spec.grid      = {-1};
  EXPECT_THROW(RunSweep(spec), InvalidArgument);
}

// With c = 0.02 no coalition can cover its cost: w(k)/k <= nu / (1 + mu)
// and no truthful bid on the default grids reaches c (1 + mu) / nu = 6.
TEST(RunSweepTest, PublishedCostLeavesMarketEmpty)
{
  SweepSpec spec;
  spec.parameter           = SweepParameter::kFixedBonus;
  spec.grid                = DefaultGrid(spec.parameter);
  spec.base.num_users      = 200;
  spec.instances_per_point = 3;
  spec.threads             = 1;
  for (auto const &p : RunSweep(spec).points)
  {
    EXPECT_EQ(p.winner_count, 0U);
    EXPECT_EQ(p.welfare, 0.0);
  }
}

TEST(RunSweepTest, UserSweepGrowsAtDiminishingRate)
{
  SweepSpec spec;
  spec.parameter           = SweepParameter::kNumUsers;
  spec.grid                = DefaultGrid(spec.parameter);
  spec.base.unit_cost      = 0.002;
  spec.instances_per_point = 10;
  spec.base_seed           = 3;
  auto const means         = RunSweep(spec).means;
  for (std::size_t i = 1; i < means.size(); ++i)
  {
    EXPECT_GT(means[i].welfare, means[i - 1].welfare);
  }
  EXPECT_LT(means.back().welfare - means[means.size() - 2].welfare, 0.5 * (means[1].welfare - means[0].welfare));
}

TEST(DefaultGridTest, Shapes)
{
  EXPECT_EQ(DefaultGrid(SweepParameter::kNumUsers).size(), 10U);
  EXPECT_EQ(DefaultGrid(SweepParameter::kFixedBonus).size(), 11U);
  EXPECT_EQ(DefaultGrid(SweepParameter::kFeeRate).size(), 9U);
  auto const lambda = DefaultGrid(SweepParameter::kMeanBlockInterval);
  ASSERT_EQ(lambda.size(), 9U);
  EXPECT_EQ(lambda.front(), 100.0);
  EXPECT_EQ(lambda[1], 312.5);
  EXPECT_EQ(lambda.back(), 1800.0);
}

TEST(SweepParameterTest, Names)
{
  for (auto p : {SweepParameter::kNumUsers, SweepParameter::kFixedBonus, SweepParameter::kFeeRate,
                 SweepParameter::kMeanBlockInterval})
  {
    EXPECT_EQ(ParseSweepParameter(ToString(p)), p);
  }
  EXPECT_THROW(ParseSweepParameter("gamma"), InvalidArgument);
}

TEST(EmitResultsTest, CsvLayoutAndRoundTrip)
{
  auto const dir    = ScratchDir("csv");
  auto const spec   = SmallSpec();
  auto const result = RunSweep(spec);
  auto const out    = dir / "sweep.csv";
  EmitResults(result, {spec.base_seed, spec.instances_per_point, spec.base}, OutputFormat::kCsv, out);

  std::ifstream in(out);
  std::string   line;
  std::getline(in, line);
  EXPECT_EQ(line, "sweep_param,grid_value,instance_index,welfare,winner_count,total_payment");
  std::size_t rows = 0;
  while (std::getline(in, line))
  {
    ++rows;
  }
  EXPECT_EQ(rows, 6U);

  std::ifstream again(out);
  EXPECT_EQ(ReadPointsCsv(again), result.points);

  std::ifstream means(MeansPath(out));
  std::getline(means, line);
  EXPECT_EQ(line, "sweep_param,grid_value,welfare,winner_count,total_payment,n_instances");
  EXPECT_EQ(MeansPath(out).filename(), "sweep.means.csv");

  auto const meta = Json::parse(Slurp(MetadataPath(out)));
  EXPECT_EQ(meta.at("rng"), "mt19937_64/splitmix64");
  EXPECT_EQ(meta.at("base_seed"), 12345U);
}

TEST(EmitResultsTest, RepeatRunsAreByteIdentical)
{
  auto const dir  = ScratchDir("bytes");
  auto const spec = SmallSpec();
  for (auto const *name : {"a.csv", "b.csv"})
  {
    EmitResults(RunSweep(spec), {spec.base_seed, spec.instances_per_point, spec.base}, OutputFormat::kCsv,
                dir / name);
  }
  EXPECT_EQ(Slurp(dir / "a.csv"), Slurp(dir / "b.csv"));
  EXPECT_EQ(Slurp(dir / "a.means.csv"), Slurp(dir / "b.means.csv"));
}

TEST(EmitResultsTest, JsonMirrorsCsv)
{
  auto const dir    = ScratchDir("json");
  auto const spec   = SmallSpec();
  auto const result = RunSweep(spec);
  EmitResults(result, {spec.base_seed, spec.instances_per_point, spec.base}, OutputFormat::kJson,
              dir / "sweep.json");
  auto const doc = Json::parse(Slurp(dir / "sweep.json"));
  ASSERT_EQ(doc.at("points").size(), result.points.size());
  for (std::size_t i = 0; i < result.points.size(); ++i)
  {
    auto const &row = doc.at("points")[i];
    EXPECT_EQ(row.at("sweep_param"), "lambda");
    EXPECT_EQ(row.at("grid_value").get<double>(), result.points[i].grid_value);
    EXPECT_EQ(row.at("welfare").get<double>(), result.points[i].welfare);
    EXPECT_EQ(row.at("total_payment").get<double>(), result.points[i].total_payment);
    EXPECT_EQ(row.at("winner_count").get<std::size_t>(), result.points[i].winner_count);
  }
  EXPECT_EQ(doc.at("means")[0].at("n_instances"), 3U);
  EXPECT_EQ(doc.at("metadata").at("sweep_param"), "lambda");
}

TEST(EmitResultsTest, UnwritableDestination)
{
  auto const spec = SmallSpec();
  EXPECT_THROW(EmitResults(RunSweep(spec), {}, OutputFormat::kCsv, "/nonexistent/dir/out.csv"), IoError);
  EXPECT_THROW(EmitResults(SweepResult{}, {}, OutputFormat::kCsv, "/tmp/x.csv"), InvalidArgument);
}

TEST(FormatDoubleTest, RoundTrips)
{
  Rng rng(1);
  for (int i = 0; i < 1000; ++i)
  {
    double const v = rng.Normal(0, 1e3) * rng.Canonical();
    EXPECT_EQ(ParseDouble(FormatDouble(v)), v);
  }
}

TEST(ConfigTest, ParsesFlatObject)
{
  auto const config = ConfigFromJson(Json::parse(R"({
    "fixed_bonus": 3, "fee_rate": 0.005, "mean_block_interval": 900, "propagation_coeff": 1,
    "mu": 0.5, "nu": 0.005, "unit_cost": 0.002, "capacity": 50, "hash_exponent": 1.2,
    "num_users": 300})"));
  EXPECT_EQ(config.blockchain.fixed_bonus, 3.0);
  EXPECT_EQ(config.blockchain.mean_block_interval, 900.0);
  EXPECT_EQ(config.unit_cost, 0.002);
  EXPECT_EQ(config.Auction().market.capacity, 50U);
  EXPECT_EQ(config.num_users, 300U);

  auto const open = ConfigFromJson(Json::parse(R"({"capacity": null, "num_users": 120})"));
  EXPECT_FALSE(open.capacity.has_value());
  EXPECT_EQ(open.Auction().market.capacity, 120U);

  EXPECT_EQ(ConfigFromJson(ConfigToJson(config)).Auction().market.capacity, 50U);
}

TEST(ConfigTest, RejectsBadConfigs)
{
  EXPECT_THROW(ConfigFromJson(Json::parse(R"({"lambda": 3})")), InvalidArgument);
  EXPECT_THROW(ConfigFromJson(Json::parse(R"({"mu": "x"})")), InvalidArgument);
  EXPECT_THROW(ConfigFromJson(Json::parse(R"({"mean_block_interval": 0})")), InvalidArgument);
  EXPECT_THROW(ConfigFromJson(Json::parse(R"([1, 2])")), InvalidArgument);
}

TEST(RosterJsonTest, RoundTrip)
{
  auto const roster = GenerateInstance(5, BlockchainParams{}, 4);
  EXPECT_EQ(RosterFromJson(Json::parse(RosterToJson(roster).dump())), roster);
  EXPECT_THROW(RosterFromJson(Json::parse(R"([{"id": 1}])")), InvalidArgument);
}

}  // namespace
