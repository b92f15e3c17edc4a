// Copyright 2026 The modmark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "modmark/algebra.hpp"
#include "modmark/error.hpp"
#include "modmark/generators.hpp"
#include "modmark/gns.hpp"
#include "modmark/io.hpp"
#include "modmark/markov.hpp"
#include "modmark/verify.hpp"

namespace py = pybind11;
using namespace modmark;

namespace {

FaithfulState make_state(const std::vector<int>& blocks, const std::vector<CMatrix>& density) {
  return FaithfulState(AlgebraElement(BlockAlgebra(blocks), density));
}

VerifyConfig make_config(int t_samples, int z_samples, std::pair<double, double> s_range,
                         double tol) {
  VerifyConfig cfg;
  cfg.t_samples = default_t_samples(t_samples);
  cfg.z_samples = default_z_samples(z_samples);
  cfg.s_samples = s_samples(s_range.first, s_range.second);
  cfg.tol.base = tol;
  return cfg;
}

py::dict markov_dict(const MarkovCheck& c) {
  py::dict d;
  d["unital"] = c.unital_residual;
  d["cp_min_eig"] = c.cp_min_eig;
  d["state"] = c.state_residual;
  d["modular"] = c.modular_residual;
  d["unital_ok"] = c.unital_ok;
  d["cp_ok"] = c.cp_ok;
  d["state_ok"] = c.state_ok;
  d["modular_ok"] = c.modular_ok;
  d["markov"] = c.all_ok();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-dimensional modular theory and Markov map checks";

  static py::exception<Error> exc(m, "ModmarkError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<BlockAlgebra>(m, "Algebra")
      .def(py::init<std::vector<int>>(), py::arg("blocks"))
      .def_property_readonly("blocks", &BlockAlgebra::block_dims)
      .def_property_readonly("hs_dim", &BlockAlgebra::hs_dim)
      .def("__repr__", [](const BlockAlgebra& a) {
        return "Algebra(" + py::str(py::cast(a.block_dims())).cast<std::string>() + ")";
      });

  py::class_<FaithfulState>(m, "State")
      .def(py::init(&make_state), py::arg("blocks"), py::arg("density"))
      .def_static("tracial", [](const std::vector<int>& b) {
        return FaithfulState::tracial(BlockAlgebra(b));
      })
      .def_property_readonly("blocks", [](const FaithfulState& s) {
        return s.algebra().block_dims();
      })
      .def_property_readonly("density", [](const FaithfulState& s) {
        return s.density().blocks();
      })
      .def_property_readonly("condition_number", &FaithfulState::condition_number);

  m.def("random_state",
        [](const std::vector<int>& blocks, std::uint64_t seed, double min_gap) {
          return random_faithful_state(BlockAlgebra(blocks), seed, min_gap);
        },
        py::arg("blocks"), py::arg("seed") = 0, py::arg("min_gap") = 0.1);

  py::class_<Channel>(m, "Channel")
      .def(py::init<FaithfulState, FaithfulState, CMatrix>(), py::arg("source"),
           py::arg("target"), py::arg("superop"))
      .def_readonly("source", &Channel::source)
      .def_readonly("target", &Channel::target)
      .def_readonly("superop", &Channel::superop)
      .def("__call__", [](const Channel& ch, const std::vector<CMatrix>& x) {
        return apply(ch, AlgebraElement(ch.source.algebra(), x)).blocks();
      });

  m.def("channel_from_kraus", &channel_from_kraus, py::arg("kraus"), py::arg("source"),
        py::arg("target"));
  m.def("compose", &compose);
  m.def("trace_dual", &trace_dual);
  m.def("petz_adjoint", &petz_adjoint);
  m.def("ac_adjoint", [](const Channel& ch, double tol) { return ac_adjoint(ch, {tol, 1.0}); },
        py::arg("channel"), py::arg("tol") = 1e-9);
  m.def("l2_matrix", &l2_matrix, "Matrix of the L2 extension in GNS coordinates");
  m.def("check_markov",
        [](const Channel& ch, double tol) { return markov_dict(check_markov(ch, {tol, 1.0})); },
        py::arg("channel"), py::arg("tol") = 1e-9);
  m.def("modular_twirl",
        [](const Channel& ch, double tol) { return modular_twirl(ch, {tol, 1.0}); },
        py::arg("channel"), py::arg("tol") = 1e-9);
  m.def("sp_ucp",
        [](const FaithfulState& source, const FaithfulState& target, std::uint64_t seed,
           int max_iter) {
          SpUcpResult r = sp_ucp(source, target, seed, max_iter);
          return py::make_tuple(r.channel, r.converged, r.iterations);
        },
        py::arg("source"), py::arg("target"), py::arg("seed") = 0, py::arg("max_iter") = 5000);

  m.def("delta_matrix",
        [](const FaithfulState& s, cplx z) { return delta_matrix(ModularData(s), z); },
        py::arg("state"), py::arg("z"));
  m.def("modular_flow",
        [](const FaithfulState& s, double t, const std::vector<CMatrix>& x) {
          return modular_flow(ModularData(s), t, AlgebraElement(s.algebra(), x)).blocks();
        },
        py::arg("state"), py::arg("t"), py::arg("x"));
  m.def("gns_axiom_residuals",
        [](const FaithfulState& s, std::uint64_t seed) {
          return gns_axiom_residuals(ModularData(s), seed);
        },
        py::arg("state"), py::arg("seed") = 0);

  // JSON-returning entry points; the package wrapper decodes them.
  m.def("_generate",
        [](const std::string& kind, const std::vector<int>& dims, std::uint64_t seed,
           const std::string& params) {
          GenSpec spec{parse_kind(kind), dims, seed, {}};
          if (!params.empty()) io::params_from_json(io::json::parse(params), spec.params);
          Instance inst = generate(spec);
          return py::make_tuple(inst.channel, inst.flagged, inst.note);
        });
  m.def("_verify",
        [](const Channel& ch, int t, int z, std::pair<double, double> s, double tol) {
          return io::dump(io::to_json(verify_instance(ch, make_config(t, z, s, tol))));
        });
  m.def("_run_suite",
        [](int trials, const std::vector<std::vector<int>>& dims, std::uint64_t seed,
           const std::vector<std::string>& kinds, double tol) {
          SuiteConfig cfg;
          cfg.trials = trials;
          cfg.dims = dims;
          cfg.seed = seed;
          cfg.kinds.clear();
          for (const auto& k : kinds) cfg.kinds.push_back(parse_kind(k));
          cfg.verify.tol.base = tol;
          py::gil_scoped_release release;
          return io::dump(io::to_json(run_suite(cfg)));
        });
  m.def("load_instance", [](const std::filesystem::path& p) { return io::read_instance(p).channel; });
  m.def("save_instance", [](const std::filesystem::path& p, const Channel& ch) {
    io::write_instance(p, io::InstanceFile{ch, std::nullopt, std::nullopt, false, ""});
  });
}
