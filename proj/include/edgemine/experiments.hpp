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

#pragma once

// Seeded parameter sweeps over random markets. Each (grid value, instance)
// cell draws its own roster from a seed derived from the cell coordinates, so
// cells are independent of each other, of the grid's other values, and of the
// order in which worker threads pick them up.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "edgemine/auction.hpp"
#include "edgemine/errors.hpp"
#include "edgemine/mining_model.hpp"
#include "edgemine/random.hpp"

namespace edgemine {

inline constexpr double kMaxTxSize = 1000.0;

enum class SweepParameter
{
  kNumUsers,
  kFixedBonus,
  kFeeRate,
  kMeanBlockInterval,
};

inline std::string_view ToString(SweepParameter p)
{
  switch (p)
  {
  case SweepParameter::kNumUsers:
    return "users";
  case SweepParameter::kFixedBonus:
    return "bonus";
  case SweepParameter::kFeeRate:
    return "fee-rate";
  case SweepParameter::kMeanBlockInterval:
    return "lambda";
  }
  return "unknown";
}

inline SweepParameter ParseSweepParameter(std::string_view name)
{
  for (auto p : {SweepParameter::kNumUsers, SweepParameter::kFixedBonus, SweepParameter::kFeeRate,
                 SweepParameter::kMeanBlockInterval})
  {
    if (ToString(p) == name)
    {
      return p;
    }
  }
  throw InvalidArgument("unknown sweep parameter '" + std::string(name) +
                        "' (expected users, bonus, fee-rate or lambda)");
}

/// Everything needed to build and solve one random market.
struct ExperimentConfig
{
  BlockchainParams           blockchain;
  NetworkEffectParams        network;
  double                     unit_cost     = 0.02;
  std::optional<std::size_t> capacity;  // unset: non-binding, D = num_users
  double                     hash_exponent = 1.2;
  std::size_t                num_users     = 600;
  PaymentRule                payment_rule  = PaymentRule::kClarkePivot;

  AuctionConfig Auction() const
  {
    AuctionConfig config;
    config.network              = network;
    config.market.unit_cost     = unit_cost;
    config.market.hash_exponent = hash_exponent;
    config.market.capacity      = capacity.value_or(std::max<std::size_t>(num_users, 1));
    config.payment_rule         = payment_rule;
    return config;
  }

  void Validate() const
  {
    blockchain.Validate();
    Auction().Validate();
    if (num_users < 1)
    {
      throw InvalidArgument("num_users must be at least 1");
    }
  }
};

struct SweepSpec
{
  SweepParameter      parameter = SweepParameter::kNumUsers;
  std::vector<double> grid;
  ExperimentConfig    base;
  std::size_t         instances_per_point = 100;
  std::uint64_t       base_seed           = 0;
  unsigned            threads             = 0;  // 0: hardware concurrency

  void Validate() const
  {
    if (grid.empty())
    {
      throw InvalidArgument("sweep grid must not be empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i)
    {
      if (!(grid[i] > grid[i - 1]))
      {
        throw InvalidArgument("sweep grid must be strictly increasing");
      }
    }
    if (instances_per_point < 1)
    {
      throw InvalidArgument("instances per point must be at least 1");
    }
    base.Validate();
  }
};

struct InstancePoint
{
  double        grid_value     = 0.0;
  std::uint64_t instance_index = 0;
  double        welfare        = 0.0;
  std::size_t   winner_count   = 0;
  double        total_payment  = 0.0;

  bool operator==(InstancePoint const &) const = default;
};

struct PointMean
{
  double      grid_value    = 0.0;
  double      welfare       = 0.0;
  double      winner_count  = 0.0;
  double      total_payment = 0.0;
  std::size_t n_instances   = 0;

  bool operator==(PointMean const &) const = default;
};

struct SweepResult
{
  SweepParameter             parameter = SweepParameter::kNumUsers;
  std::vector<InstancePoint> points;  // sorted by grid value, then instance index
  std::vector<PointMean>     means;   // one per grid value
};

/// Truthful unit-demand roster with transaction sizes uniform on [0, 1000).
inline std::vector<BidderProfile> GenerateInstance(std::size_t             num_users,
                                                   BlockchainParams const &blockchain,
                                                   std::uint64_t           seed)
{
  if (num_users < 1)
  {
    throw InvalidArgument("an instance needs at least one user");
  }
  Rng                        rng(seed);
  std::vector<BidderProfile> roster(num_users);
  for (std::size_t i = 0; i < num_users; ++i)
  {
    auto &p   = roster[i];
    p.id      = static_cast<BidderId>(i);
    p.tx_size = rng.Uniform(0.0, kMaxTxSize);
    p.demand  = 1.0;
    p.bid     = ExAnteValuation(p.tx_size, blockchain);
  }
  return roster;
}

/// Base configuration with the swept parameter set to `value`.
inline ExperimentConfig ApplyGridValue(ExperimentConfig base, SweepParameter parameter, double value)
{
  switch (parameter)
  {
  case SweepParameter::kNumUsers:
    if (!(value >= 1.0) || value != std::floor(value))
    {
      throw InvalidArgument("user counts in the grid must be positive integers");
    }
    base.num_users = static_cast<std::size_t>(value);
    break;
  case SweepParameter::kFixedBonus:
    base.blockchain.fixed_bonus = value;
    break;
  case SweepParameter::kFeeRate:
    base.blockchain.fee_rate = value;
    break;
  case SweepParameter::kMeanBlockInterval:
    base.blockchain.mean_block_interval = value;
    break;
  }
  base.Validate();
  return base;
}

inline InstancePoint RunInstance(SweepSpec const &spec, ExperimentConfig const &config,
                                 double grid_value, std::uint64_t instance_index)
{
  std::uint64_t const seed   = InstanceSeed(spec.base_seed, grid_value, instance_index);
  auto const          roster = GenerateInstance(config.num_users, config.blockchain, seed);
  auto const          result = RunAuction(roster, config.Auction());

  InstancePoint point;
  point.grid_value     = grid_value;
  point.instance_index = instance_index;
  point.welfare        = result.welfare;
  point.winner_count   = result.winners.size();
  for (double p : result.payments)
  {
    point.total_payment += p;
  }
  return point;
}

inline SweepResult RunSweep(SweepSpec const &spec)
{
  spec.Validate();

  std::vector<ExperimentConfig> configs;
  configs.reserve(spec.grid.size());
  for (double value : spec.grid)
  {
    configs.push_back(ApplyGridValue(spec.base, spec.parameter, value));
  }

  std::size_t const          per_point = spec.instances_per_point;
  std::size_t const          cells     = spec.grid.size() * per_point;
  std::vector<InstancePoint> points(cells);
  std::vector<std::string>   failures(cells);
  std::atomic<std::size_t>   next{0};
  std::atomic<bool>          failed{false};

  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells && !failed; cell = next++)
    {
      std::size_t const g     = cell / per_point;
      std::size_t const index = cell % per_point;
      try
      {
        points[cell] = RunInstance(spec, configs[g], spec.grid[g], index);
      }
      catch (std::exception const &e)
      {
        failures[cell] = e.what();
        failed         = true;
      }
    }
  };

  unsigned workers = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  workers          = std::clamp<unsigned>(workers, 1U, static_cast<unsigned>(std::max<std::size_t>(cells, 1)));
  if (workers == 1)
  {
    worker();
  }
  else
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
    {
      pool.emplace_back(worker);
    }
  }

  for (std::size_t cell = 0; cell < cells; ++cell)
  {
    if (!failures[cell].empty())
    {
      throw InvalidArgument("sweep " + std::string(ToString(spec.parameter)) + " at grid value " +
                            std::to_string(spec.grid[cell / per_point]) + ", instance " +
                            std::to_string(cell % per_point) + ": " + failures[cell]);
    }
  }

  SweepResult result;
  result.parameter = spec.parameter;
  result.points    = std::move(points);
  for (std::size_t g = 0; g < spec.grid.size(); ++g)
  {
    PointMean mean;
    mean.grid_value  = spec.grid[g];
    mean.n_instances = per_point;
    for (std::size_t i = 0; i < per_point; ++i)
    {
      auto const &p = result.points[g * per_point + i];
      mean.welfare += p.welfare;
      mean.winner_count += static_cast<double>(p.winner_count);
      mean.total_payment += p.total_payment;
    }
    auto const n = static_cast<double>(per_point);
    mean.welfare /= n;
    mean.winner_count /= n;
    mean.total_payment /= n;
    result.means.push_back(mean);
  }
  return result;
}

/// Default grids for each sweep parameter.
inline std::vector<double> DefaultGrid(SweepParameter parameter)
{
  std::vector<double> grid;
  switch (parameter)
  {
  case SweepParameter::kNumUsers:
    for (int n = 100; n <= 1000; n += 100)
    {
      grid.push_back(n);
    }
    break;
  case SweepParameter::kFixedBonus:
    for (int i = 0; i <= 10; ++i)
    {
      grid.push_back(0.5 * i);
    }
    break;
  case SweepParameter::kFeeRate:
    for (int i = 1; i <= 9; ++i)
    {
      grid.push_back(0.001 * i);
    }
    break;
  case SweepParameter::kMeanBlockInterval:
    for (int i = 0; i <= 8; ++i)
    {
      grid.push_back(100.0 + 212.5 * i);
    }
    break;
  }
  return grid;
}

}  // namespace edgemine
