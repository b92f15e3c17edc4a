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

#include "modmark/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "modmark/error.hpp"
#include "modmark/generators.hpp"
#include "modmark/io.hpp"
#include "modmark/markov.hpp"
#include "modmark/random.hpp"
#include "modmark/verify.hpp"

namespace modmark::cli {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string dims_string(const std::vector<int>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

int parse_positive_int(const std::string& text) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(text, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadSpec, "not an integer: '" + text + "'");
  }
  if (pos != text.size() || v <= 0) throw Error(ErrorCode::BadSpec, "bad size: '" + text + "'");
  return v;
}

double parse_double(const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadSpec, "not a number: '" + text + "'");
  }
  if (pos != text.size()) throw Error(ErrorCode::BadSpec, "not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  for (const auto& part : split(text, ',')) dims.push_back(parse_positive_int(part));
  if (dims.empty()) throw Error(ErrorCode::BadSpec, "empty dims");
  return dims;
}

std::vector<std::vector<int>> parse_dims_list(const std::string& text) {
  std::vector<std::vector<int>> out;
  for (const auto& alg : split(text, ',')) {
    std::vector<int> blocks;
    for (const auto& part : split(alg, '+')) blocks.push_back(parse_positive_int(part));
    if (blocks.empty()) throw Error(ErrorCode::BadSpec, "empty algebra in dims list");
    out.push_back(blocks);
  }
  if (out.empty()) throw Error(ErrorCode::BadSpec, "empty dims list");
  return out;
}

namespace {

// Base tolerance, optionally overridden by MODMARK_TOL.
Tolerance base_tolerance() {
  Tolerance tol;
  if (const char* env = std::getenv("MODMARK_TOL"); env && *env) {
    const double v = parse_double(env);
    if (!(v > 0.0)) throw Error(ErrorCode::BadSpec, "MODMARK_TOL must be positive");
    tol.base = v;
  }
  return tol;
}

void print_markov(std::ostream& out, const MarkovCheck& chk) {
  out << "  unital    " << sci(chk.unital_residual) << (chk.unital_ok ? "  ok" : "  FAIL") << '\n'
      << "  cp        " << sci(std::max(0.0, -chk.cp_min_eig)) << (chk.cp_ok ? "  ok" : "  FAIL") << '\n'
      << "  state     " << sci(chk.state_residual) << (chk.state_ok ? "  ok" : "  FAIL") << '\n'
      << "  modular   " << sci(chk.modular_residual) << (chk.modular_ok ? "  ok" : "  FAIL")
      << '\n';
}

void print_report(std::ostream& out, const VerificationReport& rep) {
  out << "instance " << rep.instance_id << "  dims " << dims_string(rep.dims);
  if (rep.spec) out << "  kind " << to_string(rep.spec->kind);
  out << '\n';
  if (rep.expected_failure) out << "  (not modular-commuting: theorem checks may fail)\n";
  if (rep.flagged) out << "  (generator did not converge)\n";
  char line[128];
  std::snprintf(line, sizeof line, "  %-22s %-10s %-10s %s\n", "check", "residual", "tolerance",
                "verdict");
  out << line;
  for (const auto& [key, value] : rep.residuals) {
    const auto tol = rep.tolerances.find(key);
    const auto ok = rep.verdicts.find(key);
    std::snprintf(line, sizeof line, "  %-22s %-10s %-10s %s\n", key.c_str(), sci(value).c_str(),
                  tol == rep.tolerances.end() ? "-" : sci(tol->second).c_str(),
                  ok != rep.verdicts.end() && ok->second ? "PASS" : "FAIL");
    out << line;
  }
  out << (rep.all_pass() ? "all checks pass\n" : "some checks FAIL\n");
}

void print_summary(std::ostream& out, const SuiteResult& res) {
  const SuiteSummary& s = res.summary;
  out << "trials " << s.total << "  passed " << s.passed << "  unexpected failures "
      << s.unexpected_failures << "  expected failures " << s.expected_failures << "  flagged "
      << s.flagged << '\n';
  char line[128];
  out << "max residuals (Markov instances):\n";
  for (const auto& [key, v] : s.max_residuals) {
    std::snprintf(line, sizeof line, "  %-22s %s\n", key.c_str(), sci(v).c_str());
    out << line;
  }
  if (!s.expected_max_residuals.empty()) {
    out << "expected failures (non-modular instances):\n";
    for (const auto& rep : res.reports) {
      if (!rep.expected_failure || rep.failures().empty()) continue;
      out << "  " << rep.instance_id << " " << dims_string(rep.dims) << " fails:";
      for (const auto& f : rep.failures()) out << ' ' << f;
      out << '\n';
    }
    out << "max residuals (non-modular instances):\n";
    for (const auto& [key, v] : s.expected_max_residuals) {
      std::snprintf(line, sizeof line, "  %-22s %s\n", key.c_str(), sci(v).c_str());
      out << line;
    }
  }
  for (const auto& rep : res.reports) {
    const auto bad = rep.unexpected_failures();
    if (bad.empty()) continue;
    out << "UNEXPECTED " << rep.instance_id << " " << dims_string(rep.dims) << ":";
    for (const auto& f : bad) out << ' ' << f;
    out << '\n';
  }
}

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::ShapeMismatch ? kExitShape : kExitUsage;
}

struct GenArgs {
  std::string kind = "identity";
  std::string dims = "2";
  std::uint64_t seed = 0;
  std::string params;
  std::string output;
};

int cmd_gen(const GenArgs& a, const Tolerance& tol, std::ostream& out, std::ostream& err) {
  GenSpec spec;
  try {
    spec.kind = parse_kind(a.kind);
    spec.dims = parse_dims(a.dims);
    spec.seed = a.seed;
    if (!a.params.empty()) io::params_from_json(io::json::parse(a.params), spec.params);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::optional<Instance> inst;
  try {
    inst = generate(spec);
    io::write_instance(a.output, io::instance_from_instance(*inst));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  out << "wrote " << a.output << "  kind " << to_string(spec.kind) << "  dims "
      << dims_string(inst->channel.source.algebra().block_dims()) << " -> "
      << dims_string(inst->channel.target.algebra().block_dims()) << "  seed " << spec.seed
      << '\n';
  print_markov(out, check_markov(inst->channel, tol));
  if (inst->flagged) {
    err << "warning: generator did not converge";
    if (!inst->note.empty()) err << " (" << inst->note << ")";
    err << '\n';
    return kExitNoConvergence;
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string file;
  int t_count = 8;
  int z_count = 16;
  std::string s_range = "-1:1";
  bool json = false;
};

int cmd_verify(const VerifyArgs& a, const Tolerance& tol, std::ostream& out, std::ostream& err) {
  VerifyConfig cfg;
  try {
    const auto range = split(a.s_range, ':');
    if (range.size() != 2) throw Error(ErrorCode::BadSpec, "--s-range must be a:b");
    const double lo = parse_double(range[0]);
    const double hi = parse_double(range[1]);
    if (!(lo <= hi)) throw Error(ErrorCode::BadSpec, "--s-range needs a <= b");
    cfg.s_samples = s_samples(lo, hi);
    cfg.t_samples = default_t_samples(a.t_count);
    cfg.z_samples = default_z_samples(a.z_count);
    cfg.tol = tol;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::optional<io::InstanceFile> file;
  try {
    file = io::read_instance(a.file);
  } catch (const Error& e) {
    err << "error: " << a.file << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
  const std::string id = std::filesystem::path(a.file).stem().string();
  VerificationReport rep =
      verify_instance(file->channel, cfg, id, file->seed.value_or(0), file->spec);
  rep.flagged = file->flagged;
  if (!file->note.empty()) rep.note = file->note;
  if (a.json) {
    io::json j = io::to_json(rep);
    j["schema_version"] = io::kReportSchemaVersion;
    out << io::dump_pretty(j) << '\n';
  } else {
    print_report(out, rep);
  }
  return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

struct SuiteArgs {
  int trials = 1;
  std::string dims = "2,3,4";
  std::uint64_t seed = 0;
  std::string kinds;
  bool json = false;
  std::string out_dir;
};

int cmd_suite(const SuiteArgs& a, const Tolerance& tol, std::ostream& out, std::ostream& err) {
  SuiteConfig cfg;
  try {
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.dims = parse_dims_list(a.dims);
    cfg.kinds.clear();
    if (a.kinds.empty()) {
      for (GenKind k : {GenKind::Identity, GenKind::Schur, GenKind::Pinch,
                        GenKind::BlockExpectation, GenKind::StateToScalar,
                        GenKind::Automorphism, GenKind::Twirl, GenKind::Convex}) {
        cfg.kinds.push_back(k);
      }
    } else {
      for (const auto& name : split(a.kinds, ',')) cfg.kinds.push_back(parse_kind(name));
    }
    cfg.verify.tol = tol;
    if (!a.out_dir.empty()) std::filesystem::create_directories(a.out_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const SuiteResult res = run_suite(cfg);
  if (!a.out_dir.empty()) {
    try {
      for (int i = 0; i < cfg.trials; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "trial-%05d.json", i);
        const Instance inst = generate(suite_spec(cfg, i));
        io::write_instance(std::filesystem::path(a.out_dir) / name,
                           io::instance_from_instance(inst));
      }
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  if (a.json) {
    out << io::dump_pretty(io::to_json(res)) << '\n';
  } else {
    print_summary(out, res);
  }
  return res.summary.unexpected_failures == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_show(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const io::InstanceFile f = io::read_instance(path);
    const Channel& ch = f.channel;
    out << "source blocks " << dims_string(ch.source.algebra().block_dims()) << "  kappa "
        << sci(ch.source.condition_number()) << '\n'
        << "target blocks " << dims_string(ch.target.algebra().block_dims()) << "  kappa "
        << sci(ch.target.condition_number()) << '\n';
    if (f.spec) {
      out << "genspec " << io::to_json(*f.spec).dump() << '\n';
    } else if (f.seed) {
      out << "seed " << *f.seed << '\n';
    }
    if (f.flagged) out << "flagged: generator did not converge\n";
    if (!f.note.empty()) out << "note: " << f.note << '\n';
    out << "Markov checks:\n";
    print_markov(out, check_markov(ch));
    out << "source density:\n";
    for (const auto& b : ch.source.density().blocks()) out << b << "\n\n";
    out << "target density:\n";
    for (const auto& b : ch.target.density().blocks()) out << b << "\n\n";
    out << "superoperator (" << ch.superop.rows() << " x " << ch.superop.cols() << "):\n"
        << ch.superop << '\n';
  } catch (const Error& e) {
    err << "error: " << path << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-dimensional modular theory and Markov map checks", "modmark"};
  app.require_subcommand(1);

  GenArgs g;
  auto* gen = app.add_subcommand("gen", "Generate a channel instance file");
  gen->add_option("--kind", g.kind, "Generator kind");
  gen->add_option("--dims", g.dims, "Block sizes of the source algebra, e.g. 2,2");
  gen->add_option("--seed", g.seed, "Seed");
  gen->add_option("--params", g.params, "Generator parameters as a JSON object");
  gen->add_option("-o,--output", g.output, "Output path")->required();

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "Verify an instance file");
  verify->add_option("file", v.file, "Instance file")->required();
  verify->add_option("--t-samples", v.t_count, "Number of t samples")->check(CLI::PositiveNumber);
  verify->add_option("--z-samples", v.z_count, "Number of z samples")->check(CLI::PositiveNumber);
  verify->add_option("--s-range", v.s_range, "Range a:b of real powers s");
  verify->add_flag("--json", v.json, "Print the report as JSON");

  SuiteArgs s;
  auto* suite = app.add_subcommand("suite", "Run a seeded verification suite");
  suite->add_option("--trials", s.trials, "Number of instances")->check(CLI::PositiveNumber);
  suite->add_option("--dims", s.dims, "Algebras, comma separated; '+' joins blocks");
  suite->add_option("--seed", s.seed, "Seed");
  suite->add_option("--kinds", s.kinds, "Generator kinds, comma separated");
  suite->add_flag("--json", s.json, "Print the suite report as JSON");
  suite->add_option("--out", s.out_dir, "Directory for per-instance files");

  std::string show_file;
  auto* show = app.add_subcommand("show", "Pretty-print an instance file");
  show->add_option("file", show_file, "Instance file")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Tolerance tol;
  try {
    tol = base_tolerance();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(g, tol, out, err);
    if (*verify) return cmd_verify(v, tol, out, err);
    if (*suite) return cmd_suite(s, tol, out, err);
    return cmd_show(show_file, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace modmark::cli
