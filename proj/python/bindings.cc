// Copyright 2026 The ARA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ara/analysis.h"
#include "ara/ara_constants.h"
#include "ara/central_store.h"
#include "ara/fleet_sim.h"
#include "ara/rappor_client.h"
#include "ara/weighting.h"

namespace py = pybind11;

namespace ara {
namespace {

// Every error status surfaces as ValueError carrying the status message.
void ThrowIfError(const absl::Status& status) {
  if (!status.ok()) throw py::value_error(std::string(status.message()));
}

template <typename T>
T Unwrap(absl::StatusOr<T> result) {
  ThrowIfError(result.status());
  return *std::move(result);
}

ConstantTable TableFor(const EncodingParams& params) {
  ThrowIfError(ValidateParams(params));
  return Unwrap(ConstantTable::Build(params.k));
}

ClientReport MakeReport(std::string client_id, int cohort,
                        const std::string& prr, const std::string& irr,
                        std::optional<std::string> true_value) {
  if (prr.size() != irr.size()) {
    throw py::value_error("prr and irr must have the same width");
  }
  const int width = static_cast<int>(prr.size());
  ClientReport report;
  report.client_id = std::move(client_id);
  report.cohort = cohort;
  report.prr = Unwrap(ReportBits::Parse(prr, width));
  report.irr = Unwrap(ReportBits::Parse(irr, width));
  report.true_value = std::move(true_value);
  return report;
}

FleetConfig MakeFleet(int64_t n_clients, uint64_t seed, double rate,
                      const EncodingParams& params, std::string prefix) {
  FleetConfig config = Unwrap(DefaultFleetConfig(n_clients, seed, rate));
  config.params = params;
  config.client_prefix = std::move(prefix);
  ThrowIfError(ValidateFleetConfig(config));
  return config;
}

py::dict RowToDict(const ExperimentRow& row) {
  py::dict d;
  d["test"] = row.test_no;
  d["major_value"] = row.major_true_value;
  d["sample_size"] = row.sample_size;
  d["achievement_pct"] = row.achievement_pct;
  d["ground_truth"] = row.ground_truth_major;
  d["correct"] = row.detected_correctly;
  return d;
}

}  // namespace
}  // namespace ara

PYBIND11_MODULE(_core, m) {
  using namespace ara;
  m.doc() = "Privacy-preserving report encoding, storage and analysis";

  py::class_<EncodingParams>(m, "EncodingParams")
      .def(py::init([](int k, int h, int m, double f, double p, double q) {
             EncodingParams params{k, h, m, f, p, q};
             ThrowIfError(ValidateParams(params));
             return params;
           }),
           py::arg("k") = 32, py::arg("h") = 2, py::arg("m") = 64,
           py::arg("f") = 0.5, py::arg("p") = 0.5, py::arg("q") = 0.75)
      .def_readonly("k", &EncodingParams::k)
      .def_readonly("h", &EncodingParams::h)
      .def_readonly("m", &EncodingParams::m)
      .def_readonly("f", &EncodingParams::f)
      .def_readonly("p", &EncodingParams::p)
      .def_readonly("q", &EncodingParams::q)
      .def("fingerprint", &ParamsFingerprint)
      .def("__eq__", [](const EncodingParams& a,
                        const EncodingParams& b) { return a == b; })
      .def("__repr__", [](const EncodingParams& p) {
        return "EncodingParams(" + CanonicalParams(p) + ")";
      });

  py::class_<ClientReport>(m, "ClientReport")
      .def(py::init(&MakeReport), py::arg("client_id"), py::arg("cohort"),
           py::arg("prr"), py::arg("irr"), py::arg("true_value") = std::nullopt)
      .def_readonly("client_id", &ClientReport::client_id)
      .def_readonly("cohort", &ClientReport::cohort)
      .def_property_readonly(
          "prr", [](const ClientReport& r) { return r.prr.ToString(); })
      .def_property_readonly(
          "irr", [](const ClientReport& r) { return r.irr.ToString(); })
      .def_readwrite("true_value", &ClientReport::true_value)
      .def("__eq__",
           [](const ClientReport& a, const ClientReport& b) { return a == b; });

  m.def(
      "bloom_encode",
      [](const std::string& value, int cohort, const EncodingParams& params) {
        return Unwrap(BloomEncode(value, cohort, params)).ToString();
      },
      py::arg("value"), py::arg("cohort"),
      py::arg("params") = EncodingParams{});
  m.def("assign_cohort", &AssignCohort, py::arg("client_id"),
        py::arg("params") = EncodingParams{});
  m.def(
      "encode_report",
      [](const std::string& client_id, const std::string& value,
         const EncodingParams& params, uint64_t seed) {
        Rng rng(seed);
        return Unwrap(EncodeReport(client_id, value, params, rng));
      },
      py::arg("client_id"), py::arg("value"),
      py::arg("params") = EncodingParams{}, py::arg("seed") = 0);

  m.def(
      "constant_table",
      [](int k) {
        const ConstantTable table = Unwrap(ConstantTable::Build(k));
        return std::vector<double>(table.weights().begin(),
                                   table.weights().end());
      },
      py::arg("k") = 32);
  m.def(
      "estimate_true_proportion",
      [](double observed_yes, double p) {
        const ProportionEstimate e =
            Unwrap(EstimateTrueProportion(observed_yes, p));
        return py::make_tuple(e.estimate, e.raw, e.out_of_range);
      },
      py::arg("observed_yes"), py::arg("p"));
  m.def("quantize_key", &QuantizeKey, py::arg("value"));
  m.def(
      "weighted_sum",
      [](int n_prr, int n_irr, int cohort, int k) {
        const WeightedSum w = Unwrap(ComputeWeightedSum(
            n_prr, n_irr, cohort, Unwrap(ConstantTable::Build(k))));
        return py::make_tuple(w.value, w.key);
      },
      py::arg("n_prr"), py::arg("n_irr"), py::arg("cohort"), py::arg("k") = 32);
  m.def(
      "verify_constant_rule",
      [](const std::vector<ClientReport>& reports,
         const std::vector<int64_t>& sizes, int k, uint64_t seed) {
        py::list out;
        for (const SamplingCheck& c : Unwrap(VerifyConstantRule(
                 reports, sizes, Unwrap(ConstantTable::Build(k)), seed))) {
          out.append(py::make_tuple(c.on_bits, c.max_relative_deviation));
        }
        return out;
      },
      py::arg("reports"), py::arg("sizes"), py::arg("k") = 32,
      py::arg("seed") = 0);

  m.def(
      "generate_corpus",
      [](int64_t n_clients, uint64_t seed, double rate,
         const EncodingParams& params, std::string prefix) {
        return Unwrap(GenerateCorpus(
            MakeFleet(n_clients, seed, rate, params, std::move(prefix))));
      },
      py::arg("n_clients"), py::arg("seed") = 0, py::arg("rate") = kDefaultRate,
      py::arg("params") = EncodingParams{}, py::arg("prefix") = "client");
  m.def(
      "write_csv",
      [](const std::vector<ClientReport>& reports, const std::string& path) {
        ThrowIfError(WriteCsvFile(reports, path));
      },
      py::arg("reports"), py::arg("path"));
  m.def(
      "read_csv",
      [](const std::string& path, const EncodingParams& params) {
        return Unwrap(ReadCsvFile(path, params));
      },
      py::arg("path"), py::arg("params") = EncodingParams{});

  py::class_<CentralStore>(m, "CentralStore")
      .def_static(
          "build",
          [](const std::vector<ClientReport>& corpus,
             const EncodingParams& params) {
            return Unwrap(BuildStore(corpus, params, TableFor(params)));
          },
          py::arg("corpus"), py::arg("params") = EncodingParams{})
      .def_static(
          "load",
          [](const std::string& path, std::optional<EncodingParams> params) {
            std::optional<std::string> fingerprint;
            if (params) fingerprint = ParamsFingerprint(*params);
            return Unwrap(CentralStore::LoadFromFile(path, fingerprint));
          },
          py::arg("path"), py::arg("params") = std::nullopt)
      .def("save",
           [](const CentralStore& s, const std::string& path) {
             ThrowIfError(s.SaveToFile(path));
           })
      .def("lookup",
           [](const CentralStore& s, const std::string& key)
               -> std::optional<std::map<std::string, uint64_t>> {
             const StoreEntry* entry = s.Lookup(key);
             if (entry == nullptr) return std::nullopt;
             return entry->counts;
           })
      .def_property_readonly("total", &CentralStore::total_training_reports)
      .def_property_readonly("fingerprint", &CentralStore::params_fingerprint)
      .def("__len__", [](const CentralStore& s) { return s.entries().size(); })
      .def("__eq__",
           [](const CentralStore& a, const CentralStore& b) { return a == b; });

  m.def(
      "analyze_batch",
      [](const std::vector<ClientReport>& reports, const CentralStore& store,
         const EncodingParams& params) {
        const AnalysisReport r =
            Unwrap(AnalyzeBatch(reports, store, TableFor(params)));
        py::dict d;
        d["sample_size"] = r.sample_size;
        d["matched"] = r.matched;
        d["credits"] = r.credits;
        d["major_value"] = r.major_value;
        d["achievement_pct"] = r.achievement_pct;
        return d;
      },
      py::arg("reports"), py::arg("store"),
      py::arg("params") = EncodingParams{});
  m.def(
      "run_experiment",
      [](int64_t train_n, int64_t test_n, int n_tests,
         const std::vector<int64_t>& batch_sizes, uint64_t seed, double rate,
         const EncodingParams& params) {
        const FleetConfig train =
            MakeFleet(train_n, DeriveSeed(seed, 0), rate, params, "train");
        const FleetConfig test =
            MakeFleet(test_n, DeriveSeed(seed, 1), rate, params, "test");
        py::list rows;
        for (const ExperimentRow& row :
             Unwrap(RunSizeSweep(train, test, n_tests, batch_sizes))) {
          rows.append(RowToDict(row));
        }
        return rows;
      },
      py::arg("train_n") = 25000, py::arg("test_n") = 25000,
      py::arg("n_tests") = 40,
      py::arg("batch_sizes") = std::vector<int64_t>{1000}, py::arg("seed") = 0,
      py::arg("rate") = kDefaultRate, py::arg("params") = EncodingParams{});
  m.def(
      "rank_correlation",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        if (x.size() != y.size()) throw py::value_error("length mismatch");
        return RankCorrelation(x, y);
      },
      py::arg("x"), py::arg("y"));
}
