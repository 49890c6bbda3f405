// Copyright 2026 The relcover Authors
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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "relcover/cqcover.hpp"
#include "relcover/decouple.hpp"
#include "relcover/entropic.hpp"
#include "relcover/errors.hpp"
#include "relcover/experiment.hpp"
#include "relcover/lemma_audit.hpp"
#include "relcover/min_entropy.hpp"
#include "relcover/qcover.hpp"
#include "relcover/smoothing.hpp"

namespace py = pybind11;
using namespace relcover;

namespace {

double value_or_inf(const DivergenceResult& d) {
  return d.support_ok ? d.value : std::numeric_limits<double>::infinity();
}

DensityOperator density(const Matrix& m) { return DensityOperator(m); }

py::dict estimate_dict(const McEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["stderr"] = e.stderr_;
  d["trials"] = e.trials;
  d["resampled"] = e.resampled;
  d["samples"] = e.samples;
  d["seeds"] = e.seeds;
  return d;
}

CQEnsemble ensemble(const std::vector<double>& pmf, const std::vector<Matrix>& states) {
  std::vector<DensityOperator> rho;
  for (const Matrix& s : states) rho.emplace_back(s);
  return CQEnsemble::from_states(pmf, std::move(rho));
}

}  // namespace

PYBIND11_MODULE(_relcover, m) {
  m.doc() = "Soft covering and decoupling numerics (base-2 logarithms throughout)";

  py::register_exception<MalformedInput>(m, "MalformedInput", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<SupportError>(m, "SupportError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<LookupError>(m, "LookupError", PyExc_KeyError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

  // States and channels
  m.def("random_density", [](int dim, int rank, std::uint64_t seed) { return random_density(dim, rank, seed).matrix(); },
        py::arg("dim"), py::arg("rank"), py::arg("seed"));
  m.def("haar_unitary", &haar_unitary, py::arg("dim"), py::arg("seed"));
  m.def("maximally_entangled", [](int d) { return maximally_entangled(d).matrix(); }, py::arg("dim"));
  m.def("partial_trace", py::overload_cast<const Matrix&, const std::vector<int>&, std::vector<int>>(&partial_trace),
        py::arg("op"), py::arg("dims"), py::arg("keep"));
  m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("index"));

  py::class_<QuantumChannel>(m, "Channel")
      .def(py::init<std::vector<Matrix>, double>(), py::arg("kraus"), py::arg("tp_tol") = 1e-10)
      .def_static("identity", &QuantumChannel::identity, py::arg("dim"))
      .def_static("depolarizing", &QuantumChannel::depolarizing, py::arg("dim"))
      .def_static("random", &QuantumChannel::random, py::arg("d_in"), py::arg("d_out"), py::arg("n_kraus"),
                  py::arg("seed"))
      .def_property_readonly("d_in", &QuantumChannel::d_in)
      .def_property_readonly("d_out", &QuantumChannel::d_out)
      .def_property_readonly("kraus", &QuantumChannel::kraus)
      .def("__call__", &QuantumChannel::apply, py::arg("rho"))
      .def("choi", [](const QuantumChannel& ch) { return choi(ch).state().matrix(); });

  // Entropic quantities; support violations come back as +inf.
  m.def("relative_entropy", [](const Matrix& s, const Matrix& r) {
    return value_or_inf(relative_entropy(HermitianOperator(s), HermitianOperator(r)));
  }, py::arg("sigma"), py::arg("rho"));
  m.def("d_max", [](const Matrix& s, const Matrix& r) {
    return value_or_inf(d_max(HermitianOperator(s), HermitianOperator(r)));
  }, py::arg("sigma"), py::arg("rho"));
  m.def("q2_tilde", [](const Matrix& s, const Matrix& r) { return q2_tilde(HermitianOperator(s), HermitianOperator(r)); },
        py::arg("sigma"), py::arg("rho"));
  m.def("fidelity", [](const Matrix& t, const Matrix& r) { return fidelity(density(t), density(r)); });
  m.def("purified_distance", [](const Matrix& t, const Matrix& r) { return purified_distance(density(t), density(r)); });
  m.def("von_neumann_entropy", [](const Matrix& r) { return von_neumann_entropy(HermitianOperator(r)); });
  m.def("aep_rate", [](const Matrix& s, const Matrix& r, int n, double eps) {
    return aep_rate(density(s), density(r), n, eps);
  }, py::arg("sigma"), py::arg("rho"), py::arg("n"), py::arg("epsilon"));
  m.def("h_min", [](const Matrix& rho, std::vector<int> dims) {
    return h_min(BipartiteState(density(rho), std::move(dims)));
  }, py::arg("rho_AB"), py::arg("dims"));
  m.def("smooth_dmax", [](const Matrix& s, const Matrix& r, double eps) {
    return smooth_dmax(density(s), HermitianOperator(r), eps).bound_value;
  }, py::arg("sigma"), py::arg("rho"), py::arg("epsilon"));
  m.def("smooth_hmin", [](const Matrix& rho, std::vector<int> dims, double eps) {
    return smooth_hmin(BipartiteState(density(rho), std::move(dims)), eps).bound_value;
  }, py::arg("rho_AB"), py::arg("dims"), py::arg("epsilon"));

  // Quantum covering
  m.def("q2_target", [](const Matrix& rho_A, const QuantumChannel& ch) {
    return q2_target(build_instance(density(rho_A), ch));
  }, py::arg("rho_A"), py::arg("channel"));
  m.def("cover_bound", [](const Matrix& rho_A, const QuantumChannel& ch, int theta) {
    return expected_divergence_bound(build_instance(density(rho_A), ch), theta);
  }, py::arg("rho_A"), py::arg("channel"), py::arg("theta"));
  m.def("cover_mc", [](const Matrix& rho_A, const QuantumChannel& ch, int theta, int trials, std::uint64_t seed) {
    return estimate_dict(mc_expectation(build_instance(density(rho_A), ch), theta, trials, seed));
  }, py::arg("rho_A"), py::arg("channel"), py::arg("theta"), py::arg("trials"), py::arg("seed"));
  m.def("haar_moments", [](int dim, int theta) {
    const HaarMoments h = haar_moments(dim, theta);
    return py::make_tuple(h.alpha, h.beta);
  }, py::arg("dim"), py::arg("theta"));

  // Classical-quantum covering
  m.def("cq_exact", [](const std::vector<double>& pmf, const std::vector<Matrix>& states, int theta) {
    return exact_expectation(ensemble(pmf, states), theta);
  }, py::arg("pmf"), py::arg("states"), py::arg("theta"));
  m.def("cq_bound", [](const std::vector<double>& pmf, const std::vector<Matrix>& states, int theta) {
    return cq_expected_bound(ensemble(pmf, states), theta);
  }, py::arg("pmf"), py::arg("states"), py::arg("theta"));
  m.def("classical_cover", [](const RealMatrix& w, const RealVector& q, int theta) {
    const ClassicalCover c = classical_bound(w, q, theta);
    return py::make_tuple(c.expected_divergence, c.d2_bound);
  }, py::arg("W"), py::arg("Q"), py::arg("theta"));

  // Decoupling
  m.def("decouple_mc", [](const Matrix& rho_AE, std::vector<int> dims, const QuantumChannel& ch, int trials,
                          std::uint64_t seed) {
    const DecoupleEstimate e = mc_expectation(DecoupleInstance(BipartiteState(density(rho_AE), std::move(dims)), ch),
                                              trials, seed);
    py::dict d = estimate_dict(e.estimate);
    d["bound"] = e.bound;
    d["bound_holds"] = e.bound_holds;
    d["pinsker_ok"] = e.pinsker_ok;
    d["excluded"] = e.excluded;
    return d;
  }, py::arg("rho_AE"), py::arg("dims"), py::arg("channel"), py::arg("trials"), py::arg("seed"));

  // Audits and experiments
  m.def("lemma_names", [] {
    std::vector<std::string> out;
    for (LemmaId id : all_lemmas()) out.push_back(lemma_name(id));
    return out;
  });
  m.def("lemma_audit", [](const std::string& name, std::uint64_t seed) {
    const LemmaAuditRecord r = lemma_audit(name, seed);
    py::dict d;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["slack"] = r.slack;
    d["dim"] = r.dim;
    return d;
  }, py::arg("name"), py::arg("seed"));
  m.def("run_config", [](const std::string& config_json) {
    const ExperimentConfig cfg = parse_config(config_json);
    const RunResult r = run(cfg);
    return py::make_tuple(r.render(cfg.format), r.violations);
  }, py::arg("config_json"), "Runs a JSON config; returns (rendered table, violation count).");
  m.def("suite", [](const std::string& preset, double tolerance) {
    const SuiteReport r = suite(preset == "full" ? Preset::kFull : Preset::kSmoke, tolerance);
    return py::make_tuple(r.passed, r.to_text());
  }, py::arg("preset") = "smoke", py::arg("tolerance") = kDefaultTolerance);
}
