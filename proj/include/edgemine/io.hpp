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

// File formats: flat JSON experiment config, JSON rosters and outcomes, and
// the CSV / JSON sweep tables.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "edgemine/auction.hpp"
#include "edgemine/errors.hpp"
#include "edgemine/experiments.hpp"
#include "edgemine/random.hpp"

namespace edgemine {

using Json = nlohmann::json;

/// Shortest decimal that parses back to the same double.
inline std::string FormatDouble(double value)
{
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{})
  {
    throw InternalError("cannot format double");
  }
  return std::string(buf, end);
}

inline double ParseDouble(std::string_view text)
{
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
  {
    throw InvalidArgument("malformed number '" + std::string(text) + "'");
  }
  return value;
}

inline std::string_view ToString(PaymentRule rule)
{
  return rule == PaymentRule::kLiteral ? "literal" : "clarke-pivot";
}

inline PaymentRule ParsePaymentRule(std::string_view name)
{
  if (name == "clarke-pivot")
  {
    return PaymentRule::kClarkePivot;
  }
  if (name == "literal")
  {
    return PaymentRule::kLiteral;
  }
  throw InvalidArgument("unknown payment rule '" + std::string(name) +
                        "' (expected clarke-pivot or literal)");
}

inline Json ReadJsonFile(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open " + path);
  }
  try
  {
    return Json::parse(in);
  }
  catch (Json::parse_error const &e)
  {
    throw InvalidArgument(path + ": " + e.what());
  }
}

inline void WriteTextFile(std::filesystem::path const &path, std::string const &text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw IoError("cannot write " + path.string());
  }
  out << text;
  out.flush();
  if (!out)
  {
    throw IoError("write failed for " + path.string());
  }
}

// Config keys: fixed_bonus, fee_rate, mean_block_interval, propagation_coeff,
// mu, nu, unit_cost, capacity, hash_exponent, num_users. Missing keys keep
// their defaults; capacity may be null for a non-binding capacity.
inline ExperimentConfig ConfigFromJson(Json const &j)
{
  if (!j.is_object())
  {
    throw InvalidArgument("config must be a JSON object");
  }
  static constexpr std::string_view kKeys[] = {
      "fixed_bonus", "fee_rate",  "mean_block_interval", "propagation_coeff", "mu",
      "nu",          "unit_cost", "capacity",            "hash_exponent",     "num_users"};
  for (auto const &item : j.items())
  {
    if (std::find(std::begin(kKeys), std::end(kKeys), item.key()) == std::end(kKeys))
    {
      throw InvalidArgument("unknown config key '" + item.key() + "'");
    }
  }

  ExperimentConfig config;
  try
  {
    auto number = [&](char const *key, double &field) {
      if (j.contains(key))
      {
        field = j.at(key).get<double>();
      }
    };
    number("fixed_bonus", config.blockchain.fixed_bonus);
    number("fee_rate", config.blockchain.fee_rate);
    number("mean_block_interval", config.blockchain.mean_block_interval);
    number("propagation_coeff", config.blockchain.propagation_coeff);
    number("mu", config.network.mu);
    number("nu", config.network.nu);
    number("unit_cost", config.unit_cost);
    number("hash_exponent", config.hash_exponent);
    if (j.contains("capacity") && !j.at("capacity").is_null())
    {
      config.capacity = j.at("capacity").get<std::size_t>();
    }
    if (j.contains("num_users"))
    {
      config.num_users = j.at("num_users").get<std::size_t>();
    }
  }
  catch (Json::exception const &e)
  {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
  config.Validate();
  return config;
}

inline Json ConfigToJson(ExperimentConfig const &config)
{
  Json j;
  j["fixed_bonus"]         = config.blockchain.fixed_bonus;
  j["fee_rate"]            = config.blockchain.fee_rate;
  j["mean_block_interval"] = config.blockchain.mean_block_interval;
  j["propagation_coeff"]   = config.blockchain.propagation_coeff;
  j["mu"]                  = config.network.mu;
  j["nu"]                  = config.network.nu;
  j["unit_cost"]           = config.unit_cost;
  j["capacity"]            = config.capacity ? Json(*config.capacity) : Json(nullptr);
  j["hash_exponent"]       = config.hash_exponent;
  j["num_users"]           = config.num_users;
  return j;
}

inline std::vector<BidderProfile> RosterFromJson(Json const &j)
{
  if (!j.is_array())
  {
    throw InvalidArgument("roster must be a JSON array of {id, tx_size, demand, bid}");
  }
  std::vector<BidderProfile> roster;
  roster.reserve(j.size());
  for (auto const &entry : j)
  {
    try
    {
      BidderProfile p;
      p.id      = entry.at("id").get<BidderId>();
      p.tx_size = entry.at("tx_size").get<double>();
      p.demand  = entry.at("demand").get<double>();
      p.bid     = entry.at("bid").get<double>();
      roster.push_back(p);
    }
    catch (Json::exception const &e)
    {
      throw InvalidArgument(std::string("bad roster entry: ") + e.what());
    }
  }
  return roster;
}

inline Json RosterToJson(std::span<BidderProfile const> roster)
{
  Json j = Json::array();
  for (auto const &p : roster)
  {
    j.push_back({{"id", p.id}, {"tx_size", p.tx_size}, {"demand", p.demand}, {"bid", p.bid}});
  }
  return j;
}

inline Json OutcomeToJson(AuctionOutcome const &outcome, AuctionConfig const &config)
{
  Json bidders = Json::array();
  for (std::size_t i = 0; i < outcome.ids.size(); ++i)
  {
    bidders.push_back({{"id", outcome.ids[i]},
                       {"allocated", outcome.allocation[i]},
                       {"payment", outcome.payments[i]}});
  }
  return {{"welfare", outcome.welfare},
          {"winners", outcome.winners},
          {"winner_count", outcome.winners.size()},
          {"payment_rule", ToString(config.payment_rule)},
          {"bidders", bidders}};
}

// --- sweep tables -----------------------------------------------------------

inline constexpr std::string_view kPointsHeader =
    "sweep_param,grid_value,instance_index,welfare,winner_count,total_payment";
inline constexpr std::string_view kMeansHeader =
    "sweep_param,grid_value,welfare,winner_count,total_payment,n_instances";

enum class OutputFormat
{
  kCsv,
  kJson,
};

inline OutputFormat ParseOutputFormat(std::string_view name)
{
  if (name == "csv")
  {
    return OutputFormat::kCsv;
  }
  if (name == "json")
  {
    return OutputFormat::kJson;
  }
  throw InvalidArgument("unknown format '" + std::string(name) + "' (expected csv or json)");
}

struct SweepMetadata
{
  std::uint64_t    base_seed           = 0;
  std::size_t      instances_per_point = 0;
  ExperimentConfig base;
};

inline Json MetadataToJson(SweepResult const &result, SweepMetadata const &meta)
{
  return {{"sweep_param", ToString(result.parameter)},
          {"rng", kRngDescription},
          {"base_seed", meta.base_seed},
          {"instances_per_point", meta.instances_per_point},
          {"payment_rule", ToString(meta.base.payment_rule)},
          {"config", ConfigToJson(meta.base)}};
}

inline std::string PointsCsv(SweepResult const &result)
{
  std::ostringstream out;
  out << kPointsHeader << '\n';
  auto const name = ToString(result.parameter);
  for (auto const &p : result.points)
  {
    out << name << ',' << FormatDouble(p.grid_value) << ',' << p.instance_index << ','
        << FormatDouble(p.welfare) << ',' << p.winner_count << ',' << FormatDouble(p.total_payment)
        << '\n';
  }
  return out.str();
}

inline std::string MeansCsv(SweepResult const &result)
{
  std::ostringstream out;
  out << kMeansHeader << '\n';
  auto const name = ToString(result.parameter);
  for (auto const &m : result.means)
  {
    out << name << ',' << FormatDouble(m.grid_value) << ',' << FormatDouble(m.welfare) << ','
        << FormatDouble(m.winner_count) << ',' << FormatDouble(m.total_payment) << ','
        << m.n_instances << '\n';
  }
  return out.str();
}

inline Json SweepToJson(SweepResult const &result, SweepMetadata const &meta)
{
  auto const name   = ToString(result.parameter);
  Json       points = Json::array();
  for (auto const &p : result.points)
  {
    points.push_back({{"sweep_param", name},
                      {"grid_value", p.grid_value},
                      {"instance_index", p.instance_index},
                      {"welfare", p.welfare},
                      {"winner_count", p.winner_count},
                      {"total_payment", p.total_payment}});
  }
  Json means = Json::array();
  for (auto const &m : result.means)
  {
    means.push_back({{"sweep_param", name},
                     {"grid_value", m.grid_value},
                     {"welfare", m.welfare},
                     {"winner_count", m.winner_count},
                     {"total_payment", m.total_payment},
                     {"n_instances", m.n_instances}});
  }
  return {{"metadata", MetadataToJson(result, meta)}, {"points", points}, {"means", means}};
}

/// `out.csv` -> `out.means.csv`.
inline std::filesystem::path MeansPath(std::filesystem::path const &destination)
{
  auto path = destination;
  path.replace_filename(destination.stem().string() + ".means" + destination.extension().string());
  return path;
}

inline std::filesystem::path MetadataPath(std::filesystem::path const &destination)
{
  auto path = destination;
  path += ".meta.json";
  return path;
}

/// CSV writes the points table at `destination`, means beside it and a
/// metadata sidecar; JSON writes a single document.
inline void EmitResults(SweepResult const &result, SweepMetadata const &meta, OutputFormat format,
                        std::filesystem::path const &destination)
{
  if (result.points.empty())
  {
    throw InvalidArgument("nothing to emit: sweep produced no points");
  }
  if (format == OutputFormat::kJson)
  {
    WriteTextFile(destination, SweepToJson(result, meta).dump(2) + "\n");
    return;
  }
  WriteTextFile(destination, PointsCsv(result));
  WriteTextFile(MeansPath(destination), MeansCsv(result));
  WriteTextFile(MetadataPath(destination), MetadataToJson(result, meta).dump(2) + "\n");
}

inline std::vector<std::string> SplitCsvLine(std::string const &line)
{
  std::vector<std::string> fields;
  std::stringstream        ss(line);
  std::string              field;
  while (std::getline(ss, field, ','))
  {
    if (!field.empty() && field.back() == '\r')
    {
      field.pop_back();
    }
    fields.push_back(field);
  }
  return fields;
}

/// Parses a points table produced by PointsCsv.
inline std::vector<InstancePoint> ReadPointsCsv(std::istream &in)
{
  std::string line;
  if (!std::getline(in, line) || line != kPointsHeader)
  {
    throw InvalidArgument("points CSV header mismatch");
  }
  std::vector<InstancePoint> points;
  while (std::getline(in, line))
  {
    if (line.empty())
    {
      continue;
    }
    auto const f = SplitCsvLine(line);
    if (f.size() != 6)
    {
      throw InvalidArgument("points CSV row has " + std::to_string(f.size()) + " fields");
    }
    InstancePoint p;
    p.grid_value     = ParseDouble(f[1]);
    p.instance_index = std::stoull(f[2]);
    p.welfare        = ParseDouble(f[3]);
    p.winner_count   = std::stoull(f[4]);
    p.total_payment  = ParseDouble(f[5]);
    points.push_back(p);
  }
  return points;
}

}  // namespace edgemine
