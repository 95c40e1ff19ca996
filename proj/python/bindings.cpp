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


// Python module _mse: instances, algorithms, bounds and the experiment runner.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mse/algorithms.hpp"
#include "mse/bounds.hpp"
#include "mse/harness.hpp"
#include "mse/instances.hpp"
#include "mse/io.hpp"
#include "mse/ptas.hpp"

namespace py = pybind11;
using namespace mse;

namespace {

std::vector<std::pair<Size, TypeId>> TaskPairs(const Instance& i) {
  std::vector<std::pair<Size, TypeId>> out;
  for (const Task& t : i.tasks()) out.emplace_back(t.size, t.type);
  return out;
}

Instance MakeInstance(const std::vector<std::pair<Size, TypeId>>& tasks,
                      const std::vector<std::vector<double>>& alpha, int machines) {
  std::vector<Task> t;
  for (const auto& [size, type] : tasks) t.push_back({size, type});
  return Instance(std::move(t), AlphaMatrix(alpha), machines);
}

py::dict Run(const std::string& name, const Instance& instance,
             const std::string& g2_overflow) {
  alg::RunOptions opt;
  if (g2_overflow == "first") {
    opt.greedy_for_2types.overflow = alg::OverflowPolicy::kFirstMachineOfFirstGroup;
  } else if (g2_overflow != "last") {
    throw Error(ErrorCode::kParse, "g2_overflow must be \"last\" or \"first\"");
  }
  const alg::AlgorithmResult r = alg::RunAlgorithm(name, instance, opt);
  py::dict d;
  d["algorithm"] = r.algorithm_name;
  d["assignment"] = r.allocation.assignment;
  d["max_cost"] = r.max_cost;
  d["wall_time_ms"] = std::chrono::duration<double, std::milli>(r.wall_time).count();
  return d;
}

py::dict Bounds(const Instance& instance) {
  const bounds::BoundReport b = bounds::ComputeBounds(instance);
  py::dict d;
  d["pmax"] = b.pmax_bound;
  d["avg_load"] = b.avg_load_bound ? py::cast(*b.avg_load_bound) : py::none();
  d["lp"] = b.lp_bound ? py::cast(*b.lp_bound) : py::none();
  d["lp_clusters"] = b.cluster_bound ? py::cast(*b.cluster_bound) : py::none();
  d["lp_failed"] = b.lp_failed;
  d["chosen"] = b.chosen;
  d["source"] = b.source;
  return d;
}

py::dict Ptas(const Instance& instance, int k, std::int64_t max_classes) {
  ptas::PtasLimits limits;
  limits.max_classes = max_classes;
  const ptas::PtasResult r = ptas::PtasOptimize(instance, k, limits);
  py::dict d;
  d["assignment"] = r.allocation.assignment;
  d["max_cost"] = r.max_cost;
  d["target_cost"] = r.target_cost.ToDouble();
  d["probes"] = r.probes;
  return d;
}

Instance Synthetic(int n, int types, int machines, const std::string& scenario,
                   std::uint64_t seed, std::uint64_t pool_seed) {
  const auto pool = inst::AssignTypes(inst::SyntheticPool(pool_seed), types);
  return inst::SampleInstance(pool, n, types, machines,
                              inst::CoefficientPreset(types, inst::ParseScenario(scenario)),
                              seed);
}

std::pair<std::string, std::string> RunExperiment(const std::string& config_json) {
  const harness::RunConfig cfg = harness::RunConfigFromJson(nlohmann::json::parse(config_json));
  const harness::RunReport r = harness::RunExperiment(cfg);
  if (!r.violations.empty()) throw std::logic_error("invariant violation: " + r.violations.front());
  return {harness::RowsToCsv(r.rows, cfg.timing),
          harness::StatsToJson(harness::Aggregate(r.rows)).dump(2)};
}

}  // namespace

PYBIND11_MODULE(_mse, m) {
  m.doc() = "Scheduling with machine-dependent interference costs";
  py::register_exception<Error>(m, "MseError", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&MakeInstance), py::arg("tasks"), py::arg("alpha"), py::arg("machines"),
           "tasks: list of (size, type); alpha: T x T coefficients")
      .def_property_readonly("tasks", &TaskPairs)
      .def_property_readonly("alpha", [](const Instance& i) { return i.alpha().rows(); })
      .def_property_readonly("machines", &Instance::machines)
      .def_property_readonly("type_count", &Instance::type_count)
      .def("__len__", &Instance::task_count)
      .def("to_json", [](const Instance& i) { return InstanceToJson(i); })
      .def_static("from_json", [](const std::string& s) { return InstanceFromJson(s).instance; })
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; });

  m.def("algorithms", &alg::AlgorithmNames);
  m.def("run", &Run, py::arg("name"), py::arg("instance"), py::arg("g2_overflow") = "last",
        "Run a named algorithm; the allocation is validated and its cost recomputed");
  m.def("max_cost",
        [](const Instance& i, const std::vector<MachineId>& a) { return MaxCost(i, Allocation{a}); },
        py::arg("instance"), py::arg("assignment"));
  m.def("bounds", &Bounds, py::arg("instance"));
  m.def(
      "exact",
      [](const Instance& i) {
        const alg::ExactResult r = alg::ExactSolve(i);
        return py::make_tuple(r.allocation.assignment, r.max_cost);
      },
      py::arg("instance"));
  m.def("ptas", &Ptas, py::arg("instance"), py::arg("k"), py::arg("max_classes") = 400);
  m.def(
      "preset",
      [](int t, const std::string& s) {
        return inst::CoefficientPreset(t, inst::ParseScenario(s)).rows();
      },
      py::arg("types"), py::arg("scenario"));
  m.def("synthetic_instance", &Synthetic, py::arg("n"), py::arg("types"), py::arg("machines"),
        py::arg("scenario"), py::arg("seed"), py::arg("pool_seed") = 1);
  m.def(
      "partition_instance",
      [](const std::vector<Size>& v) { return inst::PartitionHardInstance(v); },
      py::arg("values"));
  m.def("run_experiment", &RunExperiment, py::arg("config_json"),
        "Returns (csv, stats_json) for a run configuration");
}
