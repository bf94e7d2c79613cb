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

// Least-squares estimate of the hash-power exponent alpha from measurements
// of one miner's share while its competitors hold fixed resources.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "edgemine/errors.hpp"

namespace edgemine {

struct HashPowerSample
{
  double              varied_demand = 0.0;
  std::vector<double> fixed_demands;
  double              observed_gamma = 0.0;

  void Validate() const
  {
    if (!(varied_demand > 0.0) || fixed_demands.empty())
    {
      throw InvalidArgument("hash power sample needs a positive demand and at least one competitor");
    }
    for (double d : fixed_demands)
    {
      if (!(d > 0.0))
      {
        throw InvalidArgument("competitor demands must be positive");
      }
    }
    if (!(observed_gamma > 0.0 && observed_gamma < 1.0))
    {
      throw InvalidArgument("observed hash power must lie in (0, 1)");
    }
  }
};

struct AlphaFit
{
  double alpha      = 0.0;
  double objective  = 0.0;  // sum of squared residuals at alpha
  bool   degenerate = false;
};

inline constexpr double kDefaultAlphaLo = 0.1;
inline constexpr double kDefaultAlphaHi = 5.0;

inline double PredictGamma(HashPowerSample const &sample, double alpha)
{
  if (!(alpha > 0.0))
  {
    throw InvalidArgument("hash exponent must be positive");
  }
  double const own   = std::pow(sample.varied_demand, alpha);
  double       total = own;
  for (double d : sample.fixed_demands)
  {
    total += std::pow(d, alpha);
  }
  return own / total;
}

inline double AlphaObjective(std::span<HashPowerSample const> samples, double alpha)
{
  double sse = 0.0;
  for (auto const &s : samples)
  {
    double const r = PredictGamma(s, alpha) - s.observed_gamma;
    sse += r * r;
  }
  return sse;
}

/// Minimises the squared error in [lo, hi]: a uniform grid scan locates the
/// basin, golden-section search refines it.
inline AlphaFit FitAlpha(std::span<HashPowerSample const> samples, double lo = kDefaultAlphaLo,
                         double hi = kDefaultAlphaHi)
{
  if (samples.size() < 2)
  {
    throw InvalidArgument("fitting alpha needs at least two samples");
  }
  if (!(lo > 0.0) || !(hi > lo))
  {
    throw InvalidArgument("search interval must satisfy 0 < lo < hi");
  }
  for (auto const &s : samples)
  {
    s.Validate();
  }

  constexpr std::size_t kGrid = 257;
  double const          step  = (hi - lo) / static_cast<double>(kGrid - 1);
  std::vector<double>   values(kGrid);
  std::size_t           best = 0;
  for (std::size_t i = 0; i < kGrid; ++i)
  {
    values[i] = AlphaObjective(samples, lo + step * static_cast<double>(i));
    if (values[i] < values[best])
    {
      best = i;
    }
  }

  auto const [lowest, highest] = std::minmax_element(values.begin(), values.end());
  if (*highest - *lowest < 1e-15)
  {
    return {lo, values.front(), true};
  }

  double a = lo + step * static_cast<double>(best == 0 ? 0 : best - 1);
  double b = lo + step * static_cast<double>(std::min(best + 1, kGrid - 1));

  double const inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double       c       = b - inv_phi * (b - a);
  double       d       = a + inv_phi * (b - a);
  double       fc      = AlphaObjective(samples, c);
  double       fd      = AlphaObjective(samples, d);
  while (b - a > 1e-9)
  {
    if (fc < fd)
    {
      b  = d;
      d  = c;
      fd = fc;
      c  = b - inv_phi * (b - a);
      fc = AlphaObjective(samples, c);
    }
    else
    {
      a  = c;
      c  = d;
      fc = fd;
      d  = a + inv_phi * (b - a);
      fd = AlphaObjective(samples, d);
    }
  }

  AlphaFit fit;
  fit.alpha     = 0.5 * (a + b);
  fit.objective = AlphaObjective(samples, fit.alpha);
  // the grid point can still beat the refined interior point on a kink
  if (values[best] < fit.objective)
  {
    fit.alpha     = lo + step * static_cast<double>(best);
    fit.objective = values[best];
  }
  return fit;
}

/// Reads `varied_demand,observed_gamma,fixed_demands` CSV; the last column is
/// variadic, each line lists one or more competitor demands.
inline std::vector<HashPowerSample> ReadSamples(std::istream &in, std::string const &source = "<stream>")
{
  auto split = [](std::string const &line) {
    std::vector<std::string> fields;
    std::stringstream        ss(line);
    std::string              field;
    while (std::getline(ss, field, ','))
    {
      auto const first = field.find_first_not_of(" \t\r");
      auto const last  = field.find_last_not_of(" \t\r");
      fields.push_back(first == std::string::npos ? std::string{}
                                                  : field.substr(first, last - first + 1));
    }
    return fields;
  };

  std::string line;
  if (!std::getline(in, line))
  {
    throw InvalidArgument(source + ": missing header line");
  }
  auto const header = split(line);
  if (header.size() != 3 || header[0] != "varied_demand" || header[1] != "observed_gamma" ||
      header[2] != "fixed_demands")
  {
    throw InvalidArgument(source + ": header must be 'varied_demand,observed_gamma,fixed_demands'");
  }

  std::vector<HashPowerSample> samples;
  std::size_t                  line_no = 1;
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
    {
      continue;
    }
    auto const fields = split(line);
    if (fields.size() < 3)
    {
      throw InvalidArgument(source + ":" + std::to_string(line_no) +
                            ": expected demand, gamma and at least one competitor");
    }
    HashPowerSample sample;
    try
    {
      sample.varied_demand  = std::stod(fields[0]);
      sample.observed_gamma = std::stod(fields[1]);
      for (std::size_t i = 2; i < fields.size(); ++i)
      {
        sample.fixed_demands.push_back(std::stod(fields[i]));
      }
    }
    catch (std::logic_error const &)
    {
      throw InvalidArgument(source + ":" + std::to_string(line_no) + ": malformed number");
    }
    try
    {
      sample.Validate();
    }
    catch (InvalidArgument const &e)
    {
      throw InvalidArgument(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

inline std::vector<HashPowerSample> ReadSamplesFile(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open samples file " + path);
  }
  return ReadSamples(in, path);
}

}  // namespace edgemine
