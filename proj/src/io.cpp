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

#include "mse/io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace mse {
namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

void RequireOnlyKeys(const json& obj, std::initializer_list<const char*> keys,
                     const std::string& where) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::kParse, where + ": expected an object");
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) {
      throw Error(ErrorCode::kParse, where + ": unknown field \"" + key + "\"");
    }
  }
}

template <typename T>
T Required(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::kParse, where + ": missing field \"" + key + "\"");
  }
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse,
                where + ": field \"" + key + "\" has the wrong type");
  }
}

json Parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("json: ") + e.what());
  }
}

}  // namespace

std::string InstanceToJson(const Instance& instance,
                           const std::optional<InstanceMetadata>& metadata) {
  ordered_json doc;
  doc["m"] = instance.machines();
  doc["alpha"] = instance.alpha().rows();
  ordered_json tasks = ordered_json::array();
  for (const Task& t : instance.tasks()) {
    ordered_json task;
    task["size"] = t.size;
    task["type"] = t.type;
    tasks.push_back(std::move(task));
  }
  doc["tasks"] = std::move(tasks);
  if (metadata) {
    ordered_json meta;
    meta["scenario"] = metadata->scenario;
    meta["T"] = metadata->types;
    meta["n"] = metadata->n;
    meta["m"] = metadata->m;
    meta["seed"] = metadata->seed;
    meta["cell_id"] = metadata->cell_id;
    doc["metadata"] = std::move(meta);
  }
  return doc.dump(2) + "\n";
}

InstanceDocument InstanceFromJson(const std::string& text) {
  const json doc = Parse(text);
  RequireOnlyKeys(doc, {"m", "alpha", "tasks", "metadata"}, "instance");
  const int m = Required<int>(doc, "m", "instance");
  const auto alpha = Required<std::vector<std::vector<double>>>(doc, "alpha", "instance");
  const json& tasks_json = doc.at("tasks");
  if (!tasks_json.is_array()) {
    throw Error(ErrorCode::kParse, "instance: \"tasks\" must be an array");
  }
  std::vector<Task> tasks;
  tasks.reserve(tasks_json.size());
  for (std::size_t i = 0; i < tasks_json.size(); ++i) {
    const std::string where = "instance.tasks[" + std::to_string(i) + "]";
    RequireOnlyKeys(tasks_json[i], {"size", "type"}, where);
    tasks.push_back(Task{Required<Size>(tasks_json[i], "size", where),
                         Required<TypeId>(tasks_json[i], "type", where)});
  }
  InstanceDocument out{Instance(std::move(tasks), AlphaMatrix(alpha), m), std::nullopt};
  if (auto it = doc.find("metadata"); it != doc.end()) {
    RequireOnlyKeys(*it, {"scenario", "T", "n", "m", "seed", "cell_id"},
                    "instance.metadata");
    InstanceMetadata meta;
    meta.scenario = Required<std::string>(*it, "scenario", "instance.metadata");
    meta.types = Required<int>(*it, "T", "instance.metadata");
    meta.n = Required<int>(*it, "n", "instance.metadata");
    meta.m = Required<int>(*it, "m", "instance.metadata");
    meta.seed = Required<std::uint64_t>(*it, "seed", "instance.metadata");
    meta.cell_id = Required<int>(*it, "cell_id", "instance.metadata");
    out.metadata = meta;
  }
  return out;
}

std::string AllocationToJson(const Allocation& alloc) {
  ordered_json doc;
  doc["assignment"] = alloc.assignment;
  return doc.dump() + "\n";
}

Allocation AllocationFromJson(const std::string& text) {
  const json doc = Parse(text);
  RequireOnlyKeys(doc, {"assignment"}, "allocation");
  return Allocation{Required<std::vector<MachineId>>(doc, "assignment", "allocation")};
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kParse, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kParse, "cannot write " + path.string());
  }
  out << text;
}

InstanceDocument ReadInstanceFile(const std::filesystem::path& path) {
  return InstanceFromJson(ReadTextFile(path));
}

}  // namespace mse
