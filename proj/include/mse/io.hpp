// Copyright 2026 The MSE Authors
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

// JSON encoding of instances and allocations.
//
//   instance:   { "m": int, "alpha": [[num]], "tasks": [{"size": int, "type": int}],
//                 "metadata": {...} }      -- metadata optional
//   allocation: { "assignment": [int] }
//
// Keys are written in the order above. Unknown keys are rejected on read.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "mse/core.hpp"

namespace mse {

struct InstanceMetadata {
  std::string scenario;
  int types = 0;
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  int cell_id = 0;

  friend bool operator==(const InstanceMetadata&, const InstanceMetadata&) = default;
};

struct InstanceDocument {
  Instance instance;
  std::optional<InstanceMetadata> metadata;
};

std::string InstanceToJson(const Instance& instance,
                           const std::optional<InstanceMetadata>& metadata = {});
// Throws Error(kParse) on malformed text or unknown keys and
// Error(kInvalidInstance) when the decoded instance violates the model.
InstanceDocument InstanceFromJson(const std::string& text);

std::string AllocationToJson(const Allocation& alloc);
Allocation AllocationFromJson(const std::string& text);

InstanceDocument ReadInstanceFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace mse
