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

#include "modmark/io.hpp"

#include <fstream>
#include <sstream>

#include "modmark/error.hpp"

namespace modmark::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::Malformed, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

cplx scalar_from_json(const json& v) {
  if (v.is_number()) return cplx(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return cplx(v[0].get<double>(), v[1].get<double>());
  }
  malformed("complex entries must be [re, im] or a number");
}

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be a list");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) malformed(std::string(what) + " entries must be integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<CMatrix> matrix_list(const json& j) {
  if (!j.is_array()) malformed("expected a list of matrices");
  std::vector<CMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

int nesting_depth(const json& j) {
  int depth = 0;
  const json* cur = &j;
  while (cur->is_array() && !cur->empty()) {
    ++depth;
    cur = &(*cur)[0];
  }
  return depth;
}

// Element-valued parameters follow the element schema (a list of matrices);
// a depth-2 array is read as a single real matrix for convenience.
std::vector<CMatrix> one_or_many_matrices(const json& j) {
  if (nesting_depth(j) == 2) return {matrix_from_json(j)};
  return matrix_list(j);
}

}  // namespace

json to_json(const CMatrix& m) {
  if (!all_finite(m)) throw Error(ErrorCode::Malformed, "cannot serialize non-finite matrix");
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) malformed("matrix must be a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) malformed("matrix rows must be non-empty lists");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = scalar_from_json(row[static_cast<std::size_t>(k)]);
  }
  if (!all_finite(m)) malformed("non-finite matrix entry");
  return m;
}

json to_json(const AlgebraElement& x) {
  json out = json::array();
  for (const auto& b : x.blocks()) out.push_back(to_json(b));
  return out;
}

AlgebraElement element_from_json(const BlockAlgebra& alg, const json& j) {
  return AlgebraElement(alg, matrix_list(j));
}

json to_json(const BlockAlgebra& alg) { return {{"blocks", alg.block_dims()}}; }

BlockAlgebra algebra_from_json(const json& j) {
  return BlockAlgebra(int_list(field(j, "blocks"), "blocks"));
}

json to_json(const FaithfulState& s) {
  return {{"algebra", to_json(s.algebra())}, {"state", {{"density", to_json(s.density())}}}};
}

FaithfulState state_from_json(const json& j) {
  const BlockAlgebra alg = algebra_from_json(field(j, "algebra"));
  return FaithfulState(element_from_json(alg, field(field(j, "state"), "density")));
}

json to_json(const Channel& ch) {
  return {{"source", to_json(ch.source)}, {"target", to_json(ch.target)},
          {"superop", to_json(ch.superop)}};
}

Channel channel_from_json(const json& j) {
  const FaithfulState source = state_from_json(field(j, "source"));
  const FaithfulState target = state_from_json(field(j, "target"));
  if (j.contains("superop")) return Channel(source, target, matrix_from_json(j.at("superop")));
  if (j.contains("kraus")) return channel_from_kraus(matrix_list(j.at("kraus")), source, target);
  malformed("channel needs 'superop' or 'kraus'");
}

void params_from_json(const json& j, GenParams& p) {
  if (j.is_null()) return;
  if (!j.is_object()) malformed("params must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "min_gap") {
      p.min_gap = v.get<double>();
    } else if (key == "density") {
      p.density = one_or_many_matrices(v);
    } else if (key == "target_dims") {
      p.target_dims = int_list(v, "target_dims");
    } else if (key == "c" || key == "schur") {
      p.schur = one_or_many_matrices(v);
    } else if (key == "partition") {
      std::vector<std::vector<int>> groups;
      for (const auto& g : v) groups.push_back(int_list(g, "partition"));
      p.partition = groups;
    } else if (key == "theta") {
      p.theta = v.get<std::vector<double>>();
    } else if (key == "components") {
      std::vector<GenKind> kinds;
      for (const auto& name : v) kinds.push_back(parse_kind(name.get<std::string>()));
      p.components = kinds;
    } else if (key == "weights") {
      p.weights = v.get<std::vector<double>>();
    } else if (key == "max_iter") {
      p.max_iter = v.get<int>();
    } else {
      throw Error(ErrorCode::BadSpec, "unknown parameter '" + key + "'");
    }
  }
}

json to_json(const GenSpec& spec) {
  json params = json::object();
  const GenParams& p = spec.params;
  params["min_gap"] = p.min_gap;
  if (p.density) {
    json d = json::array();
    for (const auto& m : *p.density) d.push_back(to_json(m));
    params["density"] = d;
  }
  if (p.target_dims) params["target_dims"] = *p.target_dims;
  if (p.schur) {
    json c = json::array();
    for (const auto& m : *p.schur) c.push_back(to_json(m));
    params["c"] = c;
  }
  if (p.partition) params["partition"] = *p.partition;
  if (p.theta) params["theta"] = *p.theta;
  if (p.components) {
    json c = json::array();
    for (GenKind k : *p.components) c.push_back(std::string(to_string(k)));
    params["components"] = c;
  }
  if (p.weights) params["weights"] = *p.weights;
  if (spec.kind == GenKind::SpUcp || spec.kind == GenKind::Twirl) params["max_iter"] = p.max_iter;
  return {{"kind", std::string(to_string(spec.kind))},
          {"dims", spec.dims},
          {"seed", spec.seed},
          {"params", params}};
}

GenSpec genspec_from_json(const json& j) {
  GenSpec spec;
  spec.kind = parse_kind(field(j, "kind").get<std::string>());
  spec.dims = int_list(field(j, "dims"), "dims");
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("params")) params_from_json(j.at("params"), spec.params);
  return spec;
}

json to_json(const InstanceFile& f) {
  json meta = json::object();
  if (f.seed) meta["seed"] = *f.seed;
  if (f.spec) meta["genspec"] = to_json(*f.spec);
  meta["flagged"] = f.flagged;
  if (!f.note.empty()) meta["note"] = f.note;
  return {{"version", kInstanceVersion}, {"channel", to_json(f.channel)}, {"metadata", meta}};
}

InstanceFile instance_from_json(const json& j) {
  const json& version = field(j, "version");
  if (!version.is_string() || version.get<std::string>() != kInstanceVersion) {
    malformed("unsupported instance version");
  }
  InstanceFile f{channel_from_json(field(j, "channel")), std::nullopt, std::nullopt, false, ""};
  if (j.contains("metadata")) {
    const json& m = j.at("metadata");
    if (m.contains("seed")) f.seed = m.at("seed").get<std::uint64_t>();
    if (m.contains("genspec")) f.spec = genspec_from_json(m.at("genspec"));
    if (m.contains("flagged")) f.flagged = m.at("flagged").get<bool>();
    if (m.contains("note")) f.note = m.at("note").get<std::string>();
  }
  return f;
}

InstanceFile instance_from_instance(const Instance& inst) {
  return InstanceFile{inst.channel, inst.spec, inst.spec.seed, inst.flagged, inst.note};
}

InstanceFile read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    malformed(e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

void write_instance(const std::filesystem::path& path, const InstanceFile& f) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Malformed, "cannot write " + path.string());
  out << dump(to_json(f)) << '\n';
}

json to_json(const VerificationReport& rep) {
  json instance = {{"id", rep.instance_id}, {"seed", rep.seed}, {"dims", rep.dims}};
  if (rep.spec) instance["genspec"] = to_json(*rep.spec);
  json out = {{"instance", instance},
              {"residuals", rep.residuals},
              {"tolerances", rep.tolerances},
              {"verdicts", rep.verdicts},
              {"all_pass", rep.all_pass()},
              {"expected_failure", rep.expected_failure},
              {"flagged", rep.flagged}};
  if (!rep.note.empty()) out["note"] = rep.note;
  return out;
}

json to_json(const SuiteSummary& s) {
  return {{"total", s.total},
          {"passed", s.passed},
          {"unexpected_failures", s.unexpected_failures},
          {"expected_failures", s.expected_failures},
          {"flagged", s.flagged},
          {"max_residuals", s.max_residuals},
          {"expected_failure_max_residuals", s.expected_max_residuals}};
}

json to_json(const SuiteResult& res) {
  json kinds = json::array();
  for (GenKind k : res.config.kinds) kinds.push_back(std::string(to_string(k)));
  json zs = json::array();
  for (cplx z : res.config.verify.z_samples) zs.push_back({z.real(), z.imag()});
  json config = {{"trials", res.config.trials},
                 {"seed", res.config.seed},
                 {"dims", res.config.dims},
                 {"kinds", kinds},
                 {"min_gap", res.config.min_gap},
                 {"base_tolerance", res.config.verify.tol.base},
                 {"t_samples", res.config.verify.t_samples},
                 {"z_samples", zs},
                 {"s_samples", res.config.verify.s_samples}};
  json reports = json::array();
  for (const auto& r : res.reports) reports.push_back(to_json(r));
  return {{"schema_version", kReportSchemaVersion},
          {"config", config},
          {"reports", reports},
          {"suite_summary", to_json(res.summary)}};
}

std::string dump(const json& j) { return j.dump(); }

std::string dump_pretty(const json& j) { return j.dump(2); }

}  // namespace modmark::io
