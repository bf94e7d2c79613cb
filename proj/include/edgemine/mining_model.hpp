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

// Closed-form mining economics for miners renting edge-computing resources:
// relative hash power, orphaning, block win probability, the S-shaped network
// effect, and the ex-ante / ex-post valuations that feed the welfare objective.
//
// Everything here is a pure function of its arguments.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "edgemine/errors.hpp"

namespace edgemine {

using BidderId = std::int64_t;

/// Per-bidder 0/1 allocation indicator, indexed like the roster.
using AllocationVector = std::vector<std::uint8_t>;

/// Protocol constants chosen by the blockchain owner.
struct BlockchainParams
{
  double fixed_bonus         = 2.5;    // T
  double fee_rate            = 0.007;  // r, reward per unit of transaction size
  double mean_block_interval = 600.0;  // lambda
  double propagation_coeff   = 1.0;    // xi, propagation delay per unit of transaction size

  void Validate() const
  {
    if (!(fixed_bonus >= 0.0) || !(fee_rate >= 0.0) || !(mean_block_interval > 0.0) ||
        !(propagation_coeff >= 0.0))
    {
      throw InvalidArgument("blockchain params require T >= 0, r >= 0, lambda > 0, xi >= 0");
    }
  }
};

/// Shape of the S-curve w(d) = (1 - e^{-nu d}) / (1 + mu e^{-nu d}).
struct NetworkEffectParams
{
  double mu = 0.5;
  double nu = 0.005;

  void Validate() const
  {
    if (!(mu > 0.0) || !(nu > 0.0))
    {
      throw InvalidArgument("network effect params require mu > 0, nu > 0");
    }
  }
};

/// Provider-side constants.
struct MarketConfig
{
  double      unit_cost     = 0.02;  // c
  std::size_t capacity      = 1;     // D
  double      hash_exponent = 1.2;   // alpha

  void Validate() const
  {
    if (!(unit_cost >= 0.0) || capacity < 1 || !(hash_exponent > 0.0))
    {
      throw InvalidArgument("market config requires c >= 0, D >= 1, alpha > 0");
    }
  }
};

struct BidderProfile
{
  BidderId id      = 0;
  double   tx_size = 0.0;
  double   demand  = 1.0;
  double   bid     = 0.0;

  void Validate() const
  {
    if (!(tx_size >= 0.0) || !(demand > 0.0) || !(bid >= 0.0))
    {
      throw InvalidArgument("bidder " + std::to_string(id) +
                            " requires tx_size >= 0, demand > 0, bid >= 0");
    }
  }

  bool operator==(BidderProfile const &) const = default;
};

/// Share of each miner in the total allocated hash rate: d_i^a x_i / sum_j d_j^a x_j.
inline std::vector<double> HashPower(std::span<double const>       demands,
                                     std::span<std::uint8_t const> allocation, double alpha)
{
  if (demands.size() != allocation.size())
  {
    throw InvalidArgument("demand and allocation vectors differ in length");
  }

  std::vector<double> weights(demands.size(), 0.0);
  double              total = 0.0;
  for (std::size_t i = 0; i < demands.size(); ++i)
  {
    if (!(demands[i] > 0.0))
    {
      throw InvalidArgument("demands must be positive");
    }
    if (allocation[i] > 1)
    {
      throw InvalidArgument("allocation entries must be 0 or 1");
    }
    if (allocation[i] != 0)
    {
      weights[i] = std::pow(demands[i], alpha);
      total += weights[i];
    }
  }

  if (total <= 0.0)
  {
    throw NoAllocatedMiners();
  }

  for (auto &w : weights)
  {
    w /= total;
  }
  return weights;
}

/// Survival factor e^{-xi s / lambda}; the block escapes orphaning with this probability.
inline double PropagationSurvival(double tx_size, BlockchainParams const &params)
{
  double const delay = params.propagation_coeff * tx_size;
  return std::exp(-delay / params.mean_block_interval);
}

/// Probability that a block carrying `tx_size` worth of transactions is orphaned.
inline double OrphanProbability(double tx_size, BlockchainParams const &params)
{
  if (!(tx_size >= 0.0))
  {
    throw InvalidArgument("transaction size must be non-negative");
  }
  double const delay = params.propagation_coeff * tx_size;
  return -std::expm1(-delay / params.mean_block_interval);
}

/// Probability of mining first and then not being orphaned.
inline double BlockWinProbability(double gamma, double tx_size, BlockchainParams const &params)
{
  if (!(gamma >= 0.0 && gamma <= 1.0))
  {
    throw InvalidArgument("hash power must lie in [0, 1]");
  }
  if (!(tx_size >= 0.0))
  {
    throw InvalidArgument("transaction size must be non-negative");
  }
  return gamma * PropagationSurvival(tx_size, params);
}

/// S-shaped network effect of the total allocated resources.
inline double NetworkEffect(double total_allocated, NetworkEffectParams const &params)
{
  if (!(total_allocated >= 0.0))
  {
    throw InvalidArgument("total allocated resources must be non-negative");
  }
  double const decay = std::exp(-params.nu * total_allocated);
  return -std::expm1(-params.nu * total_allocated) / (1.0 + params.mu * decay);
}

/// Expected reward before allocation is known; this is what a truthful bidder bids.
inline double ExAnteValuation(double tx_size, BlockchainParams const &params)
{
  if (!(tx_size >= 0.0))
  {
    throw InvalidArgument("transaction size must be non-negative");
  }
  return (params.fixed_bonus + params.fee_rate * tx_size) * PropagationSurvival(tx_size, params);
}

namespace detail {

inline void CheckRoster(std::span<BidderProfile const>  profiles,
                        std::span<std::uint8_t const> allocation)
{
  if (profiles.size() != allocation.size())
  {
    throw InvalidArgument("roster and allocation vectors differ in length");
  }
}

inline std::vector<double> Demands(std::span<BidderProfile const> profiles)
{
  std::vector<double> demands;
  demands.reserve(profiles.size());
  for (auto const &p : profiles)
  {
    demands.push_back(p.demand);
  }
  return demands;
}

inline double AllocatedTotal(std::span<BidderProfile const>  profiles,
                             std::span<std::uint8_t const> allocation)
{
  double total = 0.0;
  for (std::size_t i = 0; i < profiles.size(); ++i)
  {
    if (allocation[i] != 0)
    {
      total += profiles[i].demand;
    }
  }
  return total;
}

}  // namespace detail

/// Realised value for one bidder once the allocation is fixed:
/// gamma_i(d, x) * w(sum d x) * v'_i. Zero for an unallocated bidder.
inline double ExPostValuation(std::size_t bidder_index, std::span<BidderProfile const> profiles,
                              std::span<std::uint8_t const> allocation,
                              BlockchainParams const &blockchain, NetworkEffectParams const &network,
                              double alpha)
{
  detail::CheckRoster(profiles, allocation);
  if (bidder_index >= profiles.size())
  {
    throw InvalidArgument("bidder index out of range");
  }
  if (allocation[bidder_index] == 0)
  {
    return 0.0;
  }

  auto const   demands = detail::Demands(profiles);
  auto const   gamma   = HashPower(demands, allocation, alpha);
  double const scale   = NetworkEffect(detail::AllocatedTotal(profiles, allocation), network);
  return gamma[bidder_index] * scale * ExAnteValuation(profiles[bidder_index].tx_size, blockchain);
}

/// Sum of ex-post valuations minus the provider's cost c * sum d x.
/// The capacity constraint is not checked here; the empty allocation scores 0.
inline double GeneralSocialWelfare(std::span<BidderProfile const>  profiles,
                                   std::span<std::uint8_t const> allocation,
                                   BlockchainParams const &blockchain, NetworkEffectParams const &network,
                                   MarketConfig const &market)
{
  detail::CheckRoster(profiles, allocation);
  double const total = detail::AllocatedTotal(profiles, allocation);
  if (total == 0.0)
  {
    return 0.0;
  }

  auto const   demands = detail::Demands(profiles);
  auto const   gamma   = HashPower(demands, allocation, market.hash_exponent);
  double const scale   = NetworkEffect(total, network);

  double value = 0.0;
  for (std::size_t i = 0; i < profiles.size(); ++i)
  {
    if (allocation[i] != 0)
    {
      value += gamma[i] * scale * ExAnteValuation(profiles[i].tx_size, blockchain);
    }
  }
  return value - market.unit_cost * total;
}

}  // namespace edgemine
