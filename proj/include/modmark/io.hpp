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

#ifndef MODMARK_IO_HPP
#define MODMARK_IO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "modmark/generators.hpp"
#include "modmark/verify.hpp"

namespace modmark::io {

using json = nlohmann::json;

inline constexpr const char* kInstanceVersion = "1";
inline constexpr const char* kReportSchemaVersion = "1";

// Complex scalars are [re, im]; matrices are row-major lists of rows.
// Readers also accept a bare number for a real entry.
json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json to_json(const AlgebraElement& x);  // list of block matrices
AlgebraElement element_from_json(const BlockAlgebra& alg, const json& j);

json to_json(const BlockAlgebra& alg);  // {"blocks": [...]}
BlockAlgebra algebra_from_json(const json& j);

// {"algebra": {...}, "state": {"density": [...]}}
json to_json(const FaithfulState& s);
FaithfulState state_from_json(const json& j);

// {"source": ..., "target": ..., "superop": matrix} or with "kraus": [...].
json to_json(const Channel& ch);
Channel channel_from_json(const json& j);

json to_json(const GenSpec& spec);
GenSpec genspec_from_json(const json& j);
// Fills `params` from the CLI --params object.
void params_from_json(const json& j, GenParams& params);

struct InstanceFile {
  Channel channel;
  std::optional<GenSpec> spec;
  std::optional<std::uint64_t> seed;
  bool flagged = false;
  std::string note;
};

json to_json(const InstanceFile& f);
InstanceFile instance_from_json(const json& j);
InstanceFile instance_from_instance(const Instance& inst);

InstanceFile read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const InstanceFile& f);

json to_json(const VerificationReport& rep);
json to_json(const SuiteSummary& s);
json to_json(const SuiteResult& res);

// Compact dump; doubles use shortest round-trip encoding.
std::string dump(const json& j);
// Two-space indented variant for terminal output.
std::string dump_pretty(const json& j);

}  // namespace modmark::io

#endif  // MODMARK_IO_HPP
