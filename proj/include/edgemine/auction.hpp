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

// Social-welfare-maximising auction for unit-demand miners.
//
// With d_i = 1 every winner receives the same share w(|W|) / |W| of the
// network-effect-scaled reward, so the welfare of a winner set only depends
// on its size and the sum of its bids:
//
//     S(W) = w(|W|) / |W| * sum_{i in W} b_i - c |W|,   |W| <= D.
//
// Winners are admitted greedily in descending bid order (ties: ascending id)
// until admitting the next candidate would not strictly increase S. Payments
// are VCG externalities computed against the same greedy rule run without the
// winner.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "edgemine/errors.hpp"
#include "edgemine/mining_model.hpp"

namespace edgemine {

enum class PaymentRule
{
  /// p_j = S'_{-j} - (S(W) - share(|W|) b_j): welfare of the others without j
  /// minus the welfare the others (provider included) enjoy with j present.
  kClarkePivot,
  /// p_j = S'_{-j} - S(W \ {j}): the counterfactual term evaluated as a
  /// |W|-1 winner set, exactly as the original pseudocode writes it.
  kLiteral,
};

struct AuctionConfig
{
  MarketConfig        market;
  NetworkEffectParams network;
  PaymentRule         payment_rule = PaymentRule::kClarkePivot;

  void Validate() const
  {
    market.Validate();
    network.Validate();
  }
};

/// Winner ids in admission order.
using WinnerSet = std::vector<BidderId>;

struct AuctionOutcome
{
  std::vector<BidderId> ids;  // roster order; allocation and payments follow it
  AllocationVector      allocation;
  std::vector<double>   payments;
  WinnerSet             winners;
  double                welfare = 0.0;

  bool operator==(AuctionOutcome const &) const = default;
};

struct TopKResult
{
  WinnerSet winners;
  double    welfare = 0.0;
};

struct ExhaustiveResult
{
  AllocationVector allocation;
  double           welfare = 0.0;
};

inline constexpr std::size_t kExhaustiveMaxRoster = 20;
inline constexpr double      kPaymentClampWindow  = 1e-9;

/// w(k) / k: the fraction of the scaled reward each of k unit-demand winners gets.
inline double WinnerShare(std::size_t count, NetworkEffectParams const &network)
{
  if (count == 0)
  {
    return 0.0;
  }
  return NetworkEffect(static_cast<double>(count), network) / static_cast<double>(count);
}

/// Welfare of a winner set given only its size and bid sum.
inline double WelfareOfCount(std::size_t count, double bid_sum, AuctionConfig const &config)
{
  if (count == 0)
  {
    return 0.0;
  }
  return WinnerShare(count, config.network) * bid_sum -
         config.market.unit_cost * static_cast<double>(count);
}

inline double WelfareOfSet(std::span<double const> winner_bids, AuctionConfig const &config)
{
  double const sum = std::accumulate(winner_bids.begin(), winner_bids.end(), 0.0);
  return WelfareOfCount(winner_bids.size(), sum, config);
}

namespace detail {

struct ScanResult
{
  std::size_t count   = 0;
  double      welfare = 0.0;
};

// First-decrease greedy over a descending bid sequence exposed through
// `bid_at(m)`, m in [0, n). Stops at capacity, at the end of the sequence, or
// at the first candidate that does not strictly raise welfare.
template <typename BidAt>
ScanResult GreedyScan(std::size_t n, BidAt &&bid_at, AuctionConfig const &config)
{
  ScanResult  result;
  double      prefix = 0.0;
  std::size_t limit  = std::min(n, config.market.capacity);
  for (std::size_t m = 0; m < limit; ++m)
  {
    double const candidate_sum = prefix + bid_at(m);
    double const trial         = WelfareOfCount(m + 1, candidate_sum, config);
    if (!(trial > result.welfare))
    {
      break;
    }
    prefix         = candidate_sum;
    result.count   = m + 1;
    result.welfare = trial;
  }
  return result;
}

// Indices of `bids` in descending bid order, ties by ascending id.
inline std::vector<std::size_t> DescendingOrder(std::span<double const>   bids,
                                                std::span<BidderId const> ids)
{
  std::vector<std::size_t> order(bids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (bids[a] != bids[b])
    {
      return bids[a] > bids[b];
    }
    return ids[a] < ids[b];
  });
  return order;
}

inline std::vector<BidderId> IndexIds(std::size_t n)
{
  std::vector<BidderId> ids(n);
  std::iota(ids.begin(), ids.end(), BidderId{0});
  return ids;
}

inline void CheckBids(std::span<double const> bids)
{
  for (double b : bids)
  {
    if (!(b >= 0.0))
    {
      throw InvalidArgument("bids must be non-negative");
    }
  }
}

inline void CheckUnitDemandRoster(std::span<BidderProfile const> roster)
{
  std::unordered_set<BidderId> seen;
  for (auto const &p : roster)
  {
    p.Validate();
    if (!seen.insert(p.id).second)
    {
      throw InvalidArgument("duplicate bidder id " + std::to_string(p.id));
    }
    if (p.demand != 1.0)
    {
      throw InvalidArgument("bidder " + std::to_string(p.id) +
                            " has demand != 1; the auction only supports unit demands");
    }
  }
}

inline std::vector<double> Bids(std::span<BidderProfile const> roster)
{
  std::vector<double> bids;
  bids.reserve(roster.size());
  for (auto const &p : roster)
  {
    bids.push_back(p.bid);
  }
  return bids;
}

inline std::vector<BidderId> Ids(std::span<BidderProfile const> roster)
{
  std::vector<BidderId> ids;
  ids.reserve(roster.size());
  for (auto const &p : roster)
  {
    ids.push_back(p.id);
  }
  return ids;
}

inline WinnerSet GreedyWinners(std::span<double const> bids, std::span<BidderId const> ids,
                               AuctionConfig const &config)
{
  auto const order = DescendingOrder(bids, ids);
  auto const scan  = GreedyScan(
      order.size(), [&](std::size_t m) { return bids[order[m]]; }, config);

  WinnerSet winners;
  winners.reserve(scan.count);
  for (std::size_t m = 0; m < scan.count; ++m)
  {
    winners.push_back(ids[order[m]]);
  }
  return winners;
}

// Welfare the rest of the market keeps while the winner is served inside a
// set of `winner_count` winners whose other bids sum to `others_sum`.
inline double CounterfactualTerm(std::size_t winner_count, double others_sum,
                                 AuctionConfig const &config)
{
  switch (config.payment_rule)
  {
  case PaymentRule::kLiteral:
    return WelfareOfCount(winner_count - 1, others_sum, config);
  case PaymentRule::kClarkePivot:
    break;
  }
  return WinnerShare(winner_count, config.network) * others_sum -
         config.market.unit_cost * static_cast<double>(winner_count);
}

inline double ClampPayment(double payment, BidderId winner)
{
  if (payment < -kPaymentClampWindow)
  {
    throw InternalError("negative VCG payment " + std::to_string(payment) + " for bidder " +
                        std::to_string(winner));
  }
  return payment < 0.0 ? 0.0 : payment;
}

}  // namespace detail

/// Greedy winner selection over a plain bid vector; ids are vector indices.
inline WinnerSet SelectWinnersGreedy(std::span<double const> bids, AuctionConfig const &config)
{
  detail::CheckBids(bids);
  auto const ids = detail::IndexIds(bids.size());
  return detail::GreedyWinners(bids, ids, config);
}

inline WinnerSet SelectWinnersGreedy(std::span<BidderProfile const> roster,
                                     AuctionConfig const           &config)
{
  auto const bids = detail::Bids(roster);
  detail::CheckBids(bids);
  auto const ids = detail::Ids(roster);
  return detail::GreedyWinners(bids, ids, config);
}

/// VCG payment of one winner, obtained by literally re-running greedy
/// selection on the roster without that winner. run_auction computes the same
/// quantity from shared prefix sums.
inline double VcgPayment(BidderId winner_id, std::span<BidderProfile const> roster,
                         WinnerSet const &winners, AuctionConfig const &config)
{
  if (std::find(winners.begin(), winners.end(), winner_id) == winners.end())
  {
    throw InvalidArgument("bidder " + std::to_string(winner_id) + " is not a winner");
  }

  std::vector<double>   other_bids;
  std::vector<BidderId> other_ids;
  bool                  found = false;
  for (auto const &p : roster)
  {
    if (p.id == winner_id)
    {
      found = true;
      continue;
    }
    other_bids.push_back(p.bid);
    other_ids.push_back(p.id);
  }
  if (!found)
  {
    throw InvalidArgument("winner " + std::to_string(winner_id) + " is not in the roster");
  }

  auto const without = detail::GreedyWinners(other_bids, other_ids, config);
  double     without_sum = 0.0;
  for (BidderId id : without)
  {
    auto const it = std::find(other_ids.begin(), other_ids.end(), id);
    without_sum += other_bids[static_cast<std::size_t>(it - other_ids.begin())];
  }
  double const best_without = WelfareOfCount(without.size(), without_sum, config);

  double others_sum = 0.0;
  for (BidderId id : winners)
  {
    if (id == winner_id)
    {
      continue;
    }
    auto const it = std::find_if(roster.begin(), roster.end(),
                                 [id](BidderProfile const &p) { return p.id == id; });
    if (it == roster.end())
    {
      throw InvalidArgument("winner " + std::to_string(id) + " is not in the roster");
    }
    others_sum += it->bid;
  }

  double const term = detail::CounterfactualTerm(winners.size(), others_sum, config);
  return detail::ClampPayment(best_without - term, winner_id);
}

/// Greedy allocation plus VCG payments for every winner.
///
/// One descending sort and one prefix-sum array serve every counterfactual:
/// removing the winner at sorted position q shifts the tail of the sequence by
/// one, so the greedy scan without it reads prefix[m] for m <= q and
/// prefix[m + 1] - b_q beyond. Total cost O(N log N + N |W|).
inline AuctionOutcome RunAuction(std::span<BidderProfile const> roster, AuctionConfig const &config)
{
  config.Validate();
  detail::CheckUnitDemandRoster(roster);

  std::size_t const n    = roster.size();
  auto const        bids = detail::Bids(roster);
  auto const        ids  = detail::Ids(roster);
  auto const        order = detail::DescendingOrder(bids, ids);

  std::vector<double> sorted(n);
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t m = 0; m < n; ++m)
  {
    sorted[m]     = bids[order[m]];
    prefix[m + 1] = prefix[m] + sorted[m];
  }

  AuctionOutcome outcome;
  outcome.ids        = ids;
  outcome.allocation.assign(n, 0);
  outcome.payments.assign(n, 0.0);

  auto const scan = detail::GreedyScan(
      n, [&](std::size_t m) { return sorted[m]; }, config);
  std::size_t const k = scan.count;
  outcome.welfare     = WelfareOfCount(k, prefix[k], config);

  for (std::size_t q = 0; q < k; ++q)
  {
    std::size_t const index = order[q];
    outcome.winners.push_back(ids[index]);
    outcome.allocation[index] = 1;

    auto const without = detail::GreedyScan(
        n - 1, [&](std::size_t m) { return m < q ? sorted[m] : sorted[m + 1]; }, config);
    double const without_sum =
        without.count <= q ? prefix[without.count] : prefix[without.count + 1] - sorted[q];
    double const best_without = WelfareOfCount(without.count, without_sum, config);

    double const others_sum = prefix[k] - sorted[q];
    double const term       = detail::CounterfactualTerm(k, others_sum, config);
    outcome.payments[index] = detail::ClampPayment(best_without - term, ids[index]);
  }
  return outcome;
}

/// Exact unit-demand optimum: the best top-k prefix over k = 0..min(N, D).
/// Ties resolve toward the smaller k.
inline TopKResult OracleTopK(std::span<double const> bids, AuctionConfig const &config)
{
  detail::CheckBids(bids);
  auto const ids   = detail::IndexIds(bids.size());
  auto const order = detail::DescendingOrder(bids, ids);

  std::size_t const limit = std::min(bids.size(), config.market.capacity);
  std::size_t       best_k = 0;
  double            best   = 0.0;
  double            prefix = 0.0;
  for (std::size_t k = 1; k <= limit; ++k)
  {
    prefix += bids[order[k - 1]];
    double const s = WelfareOfCount(k, prefix, config);
    if (s > best)
    {
      best   = s;
      best_k = k;
    }
  }

  TopKResult result;
  result.welfare = best;
  for (std::size_t m = 0; m < best_k; ++m)
  {
    result.winners.push_back(ids[order[m]]);
  }
  return result;
}

/// Brute force over every allocation with sum d x <= D, scoring each with the
/// general objective (hash-power shares, network effect, provider cost) and
/// bids standing in for ex-ante values. Ties go to the lexicographically
/// smallest sorted id list.
inline ExhaustiveResult OracleExhaustive(std::span<BidderProfile const> roster,
                                         AuctionConfig const           &config)
{
  if (roster.size() > kExhaustiveMaxRoster)
  {
    throw RosterTooLarge("exhaustive oracle refuses rosters larger than " +
                         std::to_string(kExhaustiveMaxRoster) + " bidders");
  }
  for (auto const &p : roster)
  {
    p.Validate();
  }

  std::size_t const   n = roster.size();
  std::vector<double> demands(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    demands[i] = roster[i].demand;
  }

  ExhaustiveResult      best{AllocationVector(n, 0), 0.0};
  std::vector<BidderId> best_ids;
  AllocationVector      x(n, 0);
  std::uint32_t const   subsets = std::uint32_t{1} << n;
  for (std::uint32_t mask = 1; mask < subsets; ++mask)
  {
    double                total = 0.0;
    std::vector<BidderId> chosen;
    for (std::size_t i = 0; i < n; ++i)
    {
      x[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
      if (x[i] != 0)
      {
        total += demands[i];
        chosen.push_back(roster[i].id);
      }
    }
    if (total > static_cast<double>(config.market.capacity))
    {
      continue;
    }

    auto const   gamma = HashPower(demands, x, config.market.hash_exponent);
    double const scale = NetworkEffect(total, config.network);
    double       value = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      value += gamma[i] * scale * roster[i].bid;
    }
    double const welfare = value - config.market.unit_cost * total;

    std::sort(chosen.begin(), chosen.end());
    if (welfare > best.welfare ||
        (welfare == best.welfare && std::lexicographical_compare(chosen.begin(), chosen.end(),
                                                                 best_ids.begin(), best_ids.end())))
    {
      best.welfare    = welfare;
      best.allocation = x;
      best_ids        = std::move(chosen);
    }
  }
  return best;
}

/// Quasi-linear utility: allocated share of the true value minus payment.
inline double BidderUtility(BidderId bidder_id, double true_value, AuctionOutcome const &outcome,
                            AuctionConfig const &config)
{
  auto const it = std::find(outcome.ids.begin(), outcome.ids.end(), bidder_id);
  if (it == outcome.ids.end())
  {
    throw InvalidArgument("bidder " + std::to_string(bidder_id) + " is not in the outcome");
  }
  auto const index = static_cast<std::size_t>(it - outcome.ids.begin());
  if (outcome.allocation[index] == 0)
  {
    return 0.0;
  }
  return WinnerShare(outcome.winners.size(), config.network) * true_value - outcome.payments[index];
}

}  // namespace edgemine
