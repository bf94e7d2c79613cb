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

#include <stdexcept>
#include <string>

namespace edgemine {

/// Input violates a documented precondition or type invariant.
class InvalidArgument : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Hash power is undefined when no miner holds any resource.
class NoAllocatedMiners : public InvalidArgument
{
public:
  NoAllocatedMiners()
    : InvalidArgument("no allocated miners")
  {}
};

/// The exhaustive oracle refuses rosters it cannot enumerate.
class RosterTooLarge : public InvalidArgument
{
public:
  using InvalidArgument::InvalidArgument;
};

/// A computed quantity broke an invariant the algorithm guarantees.
class InternalError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace edgemine
