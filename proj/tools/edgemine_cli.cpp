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

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgemine/edgemine.hpp"

namespace {

using namespace edgemine;

std::vector<double> ParseGrid(std::string const &text)
{
  std::vector<double> grid;
  for (auto const &field : SplitCsvLine(text))
  {
    grid.push_back(ParseDouble(field));
  }
  return grid;
}

int RunAuctionCommand(std::string const &bids_path, std::string const &config_path,
                      std::string const &out_path, std::string const &rule)
{
  auto const roster = RosterFromJson(ReadJsonFile(bids_path));
  auto       config = ConfigFromJson(ReadJsonFile(config_path));
  if (!config.capacity)
  {
    config.num_users = std::max<std::size_t>(roster.size(), 1);
  }
  config.payment_rule = ParsePaymentRule(rule);

  auto const auction = config.Auction();
  auto const outcome = RunAuction(roster, auction);
  WriteTextFile(out_path, OutcomeToJson(outcome, auction).dump(2) + "\n");
  std::cout << "welfare " << FormatDouble(outcome.welfare) << ", " << outcome.winners.size()
            << " winner(s) -> " << out_path << '\n';
  return 0;
}

int RunSweepCommand(std::string const &param, std::string const &config_path,
                    std::string const &grid_text, std::size_t instances, std::uint64_t seed,
                    std::string const &out_path, std::string const &format, unsigned threads,
                    std::string const &rule)
{
  SweepSpec spec;
  spec.parameter           = ParseSweepParameter(param);
  spec.base                = ConfigFromJson(ReadJsonFile(config_path));
  spec.base.payment_rule   = ParsePaymentRule(rule);
  spec.grid                = grid_text.empty() ? DefaultGrid(spec.parameter) : ParseGrid(grid_text);
  spec.instances_per_point = instances;
  spec.base_seed           = seed;
  spec.threads             = threads;
  auto const fmt           = ParseOutputFormat(format);

  auto const result = RunSweep(spec);
  EmitResults(result, {spec.base_seed, spec.instances_per_point, spec.base}, fmt, out_path);
  for (auto const &m : result.means)
  {
    std::cout << ToString(spec.parameter) << '=' << FormatDouble(m.grid_value)
              << "  mean S=" << FormatDouble(m.welfare) << "  mean |W|=" << FormatDouble(m.winner_count)
              << '\n';
  }
  return 0;
}

int RunFitCommand(std::string const &samples_path, double lo, double hi)
{
  auto const samples = ReadSamplesFile(samples_path);
  auto const fit     = FitAlpha(samples, lo, hi);
  std::cout << "alpha " << FormatDouble(fit.alpha) << '\n'
            << "sse " << FormatDouble(fit.objective) << '\n'
            << "samples " << samples.size() << '\n';
  if (fit.degenerate)
  {
    std::cout << "degenerate: objective is flat on [" << lo << ", " << hi << "]\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Edge-computing resource auction for mobile blockchain miners"};
  app.require_subcommand(1);

  auto *auction = app.add_subcommand("auction", "Single auctions");
  auction->require_subcommand(1);
  auto       *auction_run = auction->add_subcommand("run", "Solve one auction from a JSON roster");
  std::string bids_path, config_path, out_path, rule = "clarke-pivot";
  auction_run->add_option("--bids", bids_path, "JSON array of {id, tx_size, demand, bid}")->required();
  auction_run->add_option("--config", config_path, "Flat JSON config")->required();
  auction_run->add_option("--out", out_path, "Outcome JSON destination")->required();
  auction_run->add_option("--payment-rule", rule, "clarke-pivot | literal")->capture_default_str();

  auto *experiment = app.add_subcommand("experiment", "Parameter sweeps");
  experiment->require_subcommand(1);
  auto         *sweep = experiment->add_subcommand("sweep", "Seeded sweep over one parameter");
  std::string   param, grid_text, format = "csv", sweep_config, sweep_out, sweep_rule = "clarke-pivot";
  std::size_t   instances = 100;
  std::uint64_t seed      = 1;
  unsigned      threads   = 0;
  sweep->add_option("--param", param, "users | bonus | fee-rate | lambda")->required();
  sweep->add_option("--config", sweep_config, "Flat JSON config")->required();
  sweep->add_option("--grid", grid_text, "Comma-separated grid (default per parameter)");
  sweep->add_option("--instances", instances, "Instances per grid value")->capture_default_str();
  sweep->add_option("--seed", seed, "Base seed")->capture_default_str();
  sweep->add_option("--out", sweep_out, "Output path")->required();
  sweep->add_option("--format", format, "csv | json")->capture_default_str();
  sweep->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
  sweep->add_option("--payment-rule", sweep_rule, "clarke-pivot | literal")->capture_default_str();

  auto *calibrate = app.add_subcommand("calibrate", "Hash power calibration");
  calibrate->require_subcommand(1);
  auto       *fit = calibrate->add_subcommand("fit-alpha", "Least-squares fit of the hash exponent");
  std::string samples_path;
  double      lo = kDefaultAlphaLo, hi = kDefaultAlphaHi;
  fit->add_option("--samples", samples_path, "CSV: varied_demand,observed_gamma,fixed_demands")
      ->required();
  fit->add_option("--lo", lo, "Lower bound of the search interval")->capture_default_str();
  fit->add_option("--hi", hi, "Upper bound of the search interval")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (*auction_run)
    {
      return RunAuctionCommand(bids_path, config_path, out_path, rule);
    }
    if (*sweep)
    {
      return RunSweepCommand(param, sweep_config, grid_text, instances, seed, sweep_out, format,
                             threads, sweep_rule);
    }
    if (*fit)
    {
      return RunFitCommand(samples_path, lo, hi);
    }
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
