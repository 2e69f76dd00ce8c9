// Copyright 2026 The spinrecon Authors
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

#ifndef SPINRECON_CLI_IO_H_
#define SPINRECON_CLI_IO_H_

#include <json.hpp>
#include <string>
#include <vector>

#include "spinrecon/experiments.h"
#include "spinrecon/reconstruct.h"

namespace spinrecon::cli {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

json state_to_json(const PureState &state);
/// Requires length twos + 1 and a norm within 1e-6 of one; renormalizes exactly.
PureState state_from_json(const json &j);

json node_spec_to_json(const NodeSpec &spec);
NodeSpec node_spec_from_json(const json &j);

json report_to_json(const ReconstructionReport &r, const std::string &status = "ok",
                    const std::string &message = "");
ReconstructionReport report_from_json(const json &j);

json zeros_to_json(const ZeroSet &zs, const std::string &mode);

json ambiguity_to_json(const AmbiguityStats &stats, std::uint64_t seed);
json conditioning_to_json(const std::vector<ConditioningRow> &rows);

/// Row-major grid: theta_i = pi i/(n_theta-1), phi_j = 2 pi j/n_phi.
std::string husimi_grid_csv(const PureState &state, int n_theta, int n_phi);

std::string format_double(double x);

/// Text with a trailing newline; doubles use the shortest round-trip form.
std::string dump(const json &j);

}  // namespace spinrecon::cli

#endif  // SPINRECON_CLI_IO_H_
