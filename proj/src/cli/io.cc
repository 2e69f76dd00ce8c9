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

#include "spinrecon/cli/io.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "spinrecon/error.h"

namespace spinrecon::cli {

namespace {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InvalidArgument("expected a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

const char *geometry_name(const NodeSpec &spec) {
    if (std::holds_alternative<LineNodes>(spec)) return "line";
    if (std::holds_alternative<EquatorNodes>(spec)) return "equator";
    return "circle";
}

const char *base_name(BaseCurve b) { return b == BaseCurve::line ? "line" : "equator"; }

BaseCurve base_from_name(const std::string &name) {
    if (name == "line") return BaseCurve::line;
    if (name == "equator") return BaseCurve::equator;
    throw InvalidArgument("unknown base curve '" + name + "'");
}

Method method_from_name(const std::string &name) {
    for (Method m : {Method::zero_probe, Method::single_probe, Method::zero_search}) {
        if (name == method_name(m)) return m;
    }
    throw InvalidArgument("unknown method '" + name + "'");
}

std::vector<double> angles_from_json(const json &j) {
    std::vector<double> out;
    for (const json &a : j) out.push_back(a.get<double>());
    return out;
}

}  // namespace

json state_to_json(const PureState &state) {
    json amps = json::array();
    for (cplx a : state.amplitudes()) amps.push_back(complex_to_json(a));
    return json{{"twos", state.twos()}, {"amplitudes", amps}};
}

PureState state_from_json(const json &j) {
    if (!j.is_object() || !j.contains("twos") || !j.contains("amplitudes")) {
        throw InvalidArgument("state file: needs 'twos' and 'amplitudes'");
    }
    if (!j["twos"].is_number_integer()) throw InvalidArgument("state file: 'twos' must be an integer");
    const Spin spin(j["twos"].get<int>());
    const json &amps = j["amplitudes"];
    if (!amps.is_array() || static_cast<int>(amps.size()) != spin.dim()) {
        throw InvalidArgument("state file: expected twos + 1 amplitudes");
    }
    std::vector<cplx> values;
    double norm2 = 0.0;
    for (const json &a : amps) {
        cplx z = complex_from_json(a);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InvalidArgument("state file: non-finite amplitude");
        norm2 += std::norm(z);
        values.push_back(z);
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-6) throw InvalidArgument("state file: amplitudes are not normalized");
    return PureState(spin, std::move(values));
}

json node_spec_to_json(const NodeSpec &spec) {
    json j{{"geometry", geometry_name(spec)}};
    if (const auto *line = std::get_if<LineNodes>(&spec)) {
        j["rotation"] = line->rotation;
    } else if (const auto *eq = std::get_if<EquatorNodes>(&spec)) {
        j["angles"] = eq->angles;
    } else {
        const auto &c = std::get<CircleNodes>(spec);
        j["base"] = base_name(c.base);
        j["rotation"] = c.rotation;
        j["angles"] = c.angles;
        j["shift"] = complex_to_json(c.shift);
    }
    return j;
}

NodeSpec node_spec_from_json(const json &j) {
    const std::string geometry = j.at("geometry").get<std::string>();
    if (geometry == "line") return LineNodes{j.at("rotation").get<double>()};
    if (geometry == "equator") return EquatorNodes{angles_from_json(j.at("angles"))};
    if (geometry == "circle") {
        return CircleNodes{base_from_name(j.at("base").get<std::string>()), j.at("rotation").get<double>(),
                           angles_from_json(j.at("angles")), complex_from_json(j.at("shift"))};
    }
    throw InvalidArgument("unknown geometry '" + geometry + "'");
}

json report_to_json(const ReconstructionReport &r, const std::string &status, const std::string &message) {
    json j;
    j["schema"] = kReportSchema;
    j["method"] = method_name(r.method);
    j["status"] = status;
    if (!message.empty()) j["message"] = message;
    j["spin_twos"] = r.nodes ? r.nodes->spin().twos() : (r.chosen ? r.chosen->twos() : 0);
    j["chosen"] = r.chosen ? state_to_json(*r.chosen) : json(nullptr);
    j["candidates_considered"] = r.candidates_considered;
    json pairs = json::array();
    for (const ZeroPair &p : r.zero_pairs) {
        pairs.push_back({{"u", p.u}, {"v_abs", p.v_abs}, {"multiplicity", p.multiplicity}});
    }
    j["zero_pairs"] = pairs;
    j["infinity_zeros"] = r.infinity_zeros;
    if (r.nodes) {
        json nodes = node_spec_to_json(r.nodes->spec());
        json points = json::array();
        for (cplx z : r.nodes->points()) points.push_back(complex_to_json(z));
        nodes["points"] = points;
        j["nodes"] = nodes;
    } else {
        j["nodes"] = nullptr;
    }
    j["node_probabilities"] = r.node_probabilities;
    j["measurements_used"] = r.measurements_used;
    j["condition_estimate"] = r.condition_estimate;
    j["ill_conditioned"] = r.ill_conditioned;
    j["fidelity_vs_truth"] = r.fidelity_vs_truth ? json(*r.fidelity_vs_truth) : json(nullptr);
    j["probe_attempts"] = r.probe_attempts;
    j["fell_back"] = r.fell_back;
    return j;
}

ReconstructionReport report_from_json(const json &j) {
    if (j.value("schema", 0) != kReportSchema) throw InvalidArgument("report: unsupported schema");
    ReconstructionReport r;
    r.method = method_from_name(j.at("method").get<std::string>());
    if (!j.at("chosen").is_null()) r.chosen = state_from_json(j["chosen"]);
    r.candidates_considered = j.at("candidates_considered").get<std::size_t>();
    for (const json &p : j.at("zero_pairs")) {
        r.zero_pairs.push_back({p.at("u").get<double>(), p.at("v_abs").get<double>(), p.at("multiplicity").get<int>()});
    }
    r.infinity_zeros = j.at("infinity_zeros").get<int>();
    if (!j.at("nodes").is_null()) r.nodes = make_nodes(Spin(j.at("spin_twos").get<int>()), node_spec_from_json(j["nodes"]));
    r.node_probabilities = j.at("node_probabilities").get<std::vector<double>>();
    r.measurements_used = j.at("measurements_used").get<std::size_t>();
    r.condition_estimate = j.at("condition_estimate").get<double>();
    r.ill_conditioned = j.at("ill_conditioned").get<bool>();
    if (!j.at("fidelity_vs_truth").is_null()) r.fidelity_vs_truth = j["fidelity_vs_truth"].get<double>();
    r.probe_attempts = j.at("probe_attempts").get<int>();
    r.fell_back = j.at("fell_back").get<bool>();
    return r;
}

json zeros_to_json(const ZeroSet &zs, const std::string &mode) {
    // Repeated entries are one zero with multiplicity.
    std::vector<std::pair<PhasePoint, int>> grouped;
    for (const PhasePoint &z : zs.zeros) {
        bool merged = false;
        for (auto &[p, m] : grouped) {
            if (chordal_distance(p, z) <= 1e-9) {
                ++m;
                merged = true;
                break;
            }
        }
        if (!merged) grouped.emplace_back(z, 1);
    }
    json list = json::array();
    for (const auto &[p, m] : grouped) {
        const Direction d = point_to_direction(p);
        list.push_back({{"theta", d.theta()},
                        {"phi", d.phi()},
                        {"z", p.is_infinite() ? json("inf") : complex_to_json(p.value())},
                        {"multiplicity", m}});
    }
    return json{{"schema", kReportSchema}, {"spin_twos", zs.spin.twos()}, {"mode", mode}, {"zeros", list}};
}

json ambiguity_to_json(const AmbiguityStats &stats, std::uint64_t seed) {
    json trials = json::array();
    for (const AmbiguityTrial &t : stats.trials) {
        trials.push_back({{"consistent_up_to_scale", t.consistent_up_to_scale},
                          {"consistent_normalized", t.consistent_normalized}});
    }
    auto optional_number = [](const std::optional<double> &x) { return x ? json(*x) : json(nullptr); };
    return json{{"schema", kReportSchema},
                {"experiment", "ambiguity"},
                {"spin_twos", stats.twos},
                {"nodes", stats.strategy == NodeStrategy::line ? "line" : "random"},
                {"seed", seed},
                {"trials", stats.trials.size()},
                {"unique_fraction_up_to_scale", optional_number(stats.unique_fraction_up_to_scale)},
                {"unique_fraction_normalized", optional_number(stats.unique_fraction_normalized)},
                {"per_trial", trials}};
}

json conditioning_to_json(const std::vector<ConditioningRow> &rows) {
    json list = json::array();
    for (const ConditioningRow &r : rows) {
        list.push_back({{"spin_twos", r.twos}, {"line", r.line}, {"equator", r.equator}});
    }
    return json{{"schema", kReportSchema}, {"experiment", "conditioning"}, {"rows", list}};
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string husimi_grid_csv(const PureState &state, int n_theta, int n_phi) {
    if (n_theta < 2 || n_phi < 2) throw InvalidArgument("husimi grid: both sizes must be at least 2");
    std::ostringstream out;
    out << "theta,phi,z_re,z_im,P\n";
    for (int i = 0; i < n_theta; ++i) {
        const double theta = i == n_theta - 1 ? std::numbers::pi : std::numbers::pi * i / (n_theta - 1);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / n_phi;
            const Direction d(theta, phi);
            const PhasePoint p = direction_to_point(d);
            out << format_double(theta) << ',' << format_double(phi) << ',';
            if (p.is_infinite()) {
                out << "inf,0";
            } else {
                out << format_double(p.value().real()) << ',' << format_double(p.value().imag());
            }
            out << ',' << format_double(husimi(state, p)) << '\n';
        }
    }
    return out.str();
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

}  // namespace spinrecon::cli
