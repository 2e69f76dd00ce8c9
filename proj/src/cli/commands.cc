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

#include "spinrecon/cli/commands.h"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "spinrecon/cli/io.h"
#include "spinrecon/error.h"
#include "spinrecon/zero_search.h"

namespace spinrecon::cli {

namespace {

struct Options {
    std::optional<int> spin;
    std::string out_path;
    std::optional<std::uint64_t> seed;

    // generate
    std::string kind = "random";
    std::string z = "0,0";
    std::optional<double> mu;

    // reconstruct, zeros, husimi-grid
    std::string state_path;
    std::string geometry = "line";
    std::string base = "equator";
    double phitilde = 0.0;
    std::string shift = "0,0";
    std::string stepii = "zero-probe";
    std::optional<std::int64_t> shots;
    std::string mode = "algebraic";
    std::string grid = "50x100";

    // experiment
    std::string experiment = "ambiguity";
    std::string nodes = "random";
    int trials = 100;
    int max_spin = 10;
};

cplx parse_complex(const std::string &text) {
    std::istringstream in(text);
    double re = 0.0;
    double im = 0.0;
    char comma = 0;
    if (!(in >> re >> comma >> im) || comma != ',' || !(in >> std::ws).eof() || !std::isfinite(re) ||
        !std::isfinite(im)) {
        throw InvalidArgument("expected a complex number as 're,im', got '" + text + "'");
    }
    return {re, im};
}

std::pair<int, int> parse_grid(const std::string &text) {
    std::istringstream in(text);
    int a = 0;
    int b = 0;
    char x = 0;
    if (!(in >> a >> x >> b) || x != 'x' || !(in >> std::ws).eof()) {
        throw InvalidArgument("grid must look like 'NTHETAxNPHI', got '" + text + "'");
    }
    return {a, b};
}

PureState read_state(const Options &o) {
    std::ifstream in(o.state_path);
    if (!in) throw InvalidArgument("cannot open state file '" + o.state_path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception &e) {
        throw InvalidArgument(std::string("state file is not valid JSON: ") + e.what());
    }
    PureState state = state_from_json(j);
    if (o.spin && *o.spin != state.twos()) throw InvalidArgument("--spin does not match the state file");
    return state;
}

void emit(const Options &o, const std::string &text, std::ostream &out) {
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) throw InvalidArgument("cannot write '" + o.out_path + "'");
    file << text;
}

MeasurementOracle make_oracle(const Options &o, const PureState &state) {
    if (!o.shots) return MeasurementOracle::exact(state);
    if (!o.seed) throw InvalidArgument("--shots requires --seed");
    return MeasurementOracle::sampled(state, *o.shots, *o.seed);
}

NodeSpec node_spec(const Options &o) {
    const cplx shift = parse_complex(o.shift);
    if (o.geometry == "line") {
        if (shift != cplx{0.0, 0.0}) throw InvalidArgument("--shift needs --geometry circle");
        return LineNodes{o.phitilde};
    }
    if (o.geometry == "equator") {
        if (shift != cplx{0.0, 0.0}) throw InvalidArgument("--shift needs --geometry circle");
        return EquatorNodes{};
    }
    if (o.geometry == "circle") {
        CircleNodes c;
        c.base = o.base == "line" ? BaseCurve::line : BaseCurve::equator;
        c.rotation = o.phitilde;
        c.shift = shift;
        return c;
    }
    throw InvalidArgument("unknown geometry '" + o.geometry + "'");
}

int cmd_generate(const Options &o, std::ostream &out) {
    if (!o.spin) throw InvalidArgument("generate needs --spin");
    const Spin spin(*o.spin);
    std::optional<PureState> state;
    if (o.kind == "random") {
        std::mt19937_64 rng(mix_seed(o.seed.value_or(0)));
        state = haar_state(spin, rng);
    } else if (o.kind == "coherent") {
        state = coherent_state(spin, PhasePoint(parse_complex(o.z)));
    } else if (o.kind == "basis") {
        if (!o.mu) throw InvalidArgument("basis needs --mu");
        const double twice = 2.0 * *o.mu;
        if (std::abs(twice - std::round(twice)) > 1e-12) throw InvalidArgument("--mu must be a multiple of 1/2");
        state = PureState::basis(spin, static_cast<int>(std::lround(twice)));
    } else {
        throw InvalidArgument("unknown kind '" + o.kind + "'");
    }
    emit(o, dump(state_to_json(state->canonical())), out);
    return kOk;
}

int cmd_reconstruct(const Options &o, std::ostream &out, std::ostream &err) {
    const PureState truth = read_state(o);
    MeasurementOracle oracle = make_oracle(o, truth);
    ReconstructConfig config;
    config.nodes = node_spec(o);
    config.step_two = o.stepii == "single-probe" ? StepTwoMethod::single_probe : StepTwoMethod::zero_probe;
    config.seed = o.seed.value_or(0) + 1;
    if (o.geometry == "line" && truth.twos() > 10) {
        err << "note: line nodes are poorly conditioned beyond s = 5; consider --geometry equator\n";
    }
    try {
        ReconstructionReport report = reconstruct(oracle, config);
        report.fidelity_vs_truth = fidelity(*report.chosen, truth);
        emit(o, dump(report_to_json(report)), out);
        return kOk;
    } catch (const InconclusiveReconstruction &e) {
        err << "inconclusive: " << e.what() << "\n";
        emit(o, dump(report_to_json(e.partial(), "inconclusive", e.what())), out);
        return kInconclusive;
    }
}

int cmd_zeros(const Options &o, std::ostream &out) {
    const PureState state = read_state(o);
    if (o.mode == "algebraic") {
        emit(o, dump(zeros_to_json(zeros_of(state), o.mode)), out);
        return kOk;
    }
    if (o.mode != "search") throw InvalidArgument("unknown mode '" + o.mode + "'");
    MeasurementOracle oracle = make_oracle(o, state);
    json j = zeros_to_json(zero_search(oracle), o.mode);
    j["measurements_used"] = oracle.query_count();
    emit(o, dump(j), out);
    return kOk;
}

int cmd_husimi_grid(const Options &o, std::ostream &out) {
    const PureState state = read_state(o);
    const auto [n_theta, n_phi] = parse_grid(o.grid);
    emit(o, husimi_grid_csv(state, n_theta, n_phi), out);
    return kOk;
}

int cmd_experiment(const Options &o, std::ostream &out) {
    if (o.experiment == "conditioning") {
        emit(o, dump(conditioning_to_json(conditioning_sweep(o.max_spin))), out);
        return kOk;
    }
    if (o.experiment != "ambiguity") throw InvalidArgument("unknown experiment '" + o.experiment + "'");
    if (!o.spin) throw InvalidArgument("ambiguity experiment needs --spin");
    const NodeStrategy strategy = o.nodes == "line" ? NodeStrategy::line : NodeStrategy::random_points;
    const std::uint64_t seed = o.seed.value_or(0);
    emit(o, dump(ambiguity_to_json(ambiguity_experiment(Spin(*o.spin), strategy, o.trials, seed), seed)), out);
    return kOk;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Pure spin-state reconstruction from Stern-Gerlach probabilities", "spinrecon"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--spin", o.spin, "twice the spin, 2s")->check(CLI::Range(1, Spin::kMaxTwos));
        cmd->add_option("--out", o.out_path, "write the result here instead of standard output");
    };
    auto add_seed = [&](CLI::App *cmd) { cmd->add_option("--seed", o.seed, "64-bit seed"); };
    auto add_state = [&](CLI::App *cmd) { cmd->add_option("--state", o.state_path, "state file (JSON)")->required(); };
    auto add_oracle = [&](CLI::App *cmd) {
        cmd->add_option("--shots", o.shots, "shots per direction; exact probabilities when omitted")
            ->check(CLI::Range(std::int64_t{1}, std::int64_t{10'000'000}));
        add_seed(cmd);
    };

    CLI::App *generate = app.add_subcommand("generate", "write a state file");
    add_common(generate);
    add_seed(generate);
    generate->add_option("--kind", o.kind, "random | coherent | basis")
        ->check(CLI::IsMember({"random", "coherent", "basis"}));
    generate->add_option("--z", o.z, "coherent-state point 're,im'");
    generate->add_option("--mu", o.mu, "magnetic quantum number m of the basis state");

    CLI::App *recon = app.add_subcommand("reconstruct", "reconstruct a state from simulated measurements");
    add_common(recon);
    add_state(recon);
    add_oracle(recon);
    recon->add_option("--geometry", o.geometry, "line | equator | circle")
        ->check(CLI::IsMember({"line", "equator", "circle"}));
    recon->add_option("--base", o.base, "curve shifted by --geometry circle: line | equator")
        ->check(CLI::IsMember({"line", "equator"}));
    recon->add_option("--phitilde", o.phitilde, "rotation of line nodes about the z axis (radians)");
    recon->add_option("--shift", o.shift, "rigid shift 're,im' of the node curve");
    recon->add_option("--stepii", o.stepii, "zero-probe | single-probe")
        ->check(CLI::IsMember({"zero-probe", "single-probe"}));

    CLI::App *zeros = app.add_subcommand("zeros", "zeros of the Husimi function");
    add_common(zeros);
    add_state(zeros);
    add_oracle(zeros);
    zeros->add_option("--mode", o.mode, "algebraic | search")->check(CLI::IsMember({"algebraic", "search"}));

    CLI::App *grid = app.add_subcommand("husimi-grid", "Husimi function on a theta-phi grid (CSV)");
    add_common(grid);
    add_state(grid);
    grid->add_option("--grid", o.grid, "NTHETAxNPHI, both at least 2");

    CLI::App *experiment = app.add_subcommand("experiment", "ambiguity or conditioning statistics");
    add_common(experiment);
    add_seed(experiment);
    experiment->add_option("--kind", o.experiment, "ambiguity | conditioning")
        ->check(CLI::IsMember({"ambiguity", "conditioning"}));
    experiment->add_option("--nodes", o.nodes, "node strategy for ambiguity: line | random")
        ->check(CLI::IsMember({"line", "random"}));
    experiment->add_option("--trials", o.trials, "ambiguity trials")->check(CLI::NonNegativeNumber);
    experiment->add_option("--max-spin", o.max_spin, "largest 2s of the conditioning sweep")
        ->check(CLI::Range(1, kMaxReconstructionTwos));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        std::ostringstream usage;
        std::ostringstream failure;
        const int code = app.exit(e, usage, failure);
        out << usage.str();
        err << failure.str();
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(o, out);
        if (recon->parsed()) return cmd_reconstruct(o, out, err);
        if (zeros->parsed()) return cmd_zeros(o, out);
        if (grid->parsed()) return cmd_husimi_grid(o, out);
        return cmd_experiment(o, out);
    } catch (const NotEnoughMinima &e) {
        err << "error: " << e.what() << "\n";
        return kZeroSearchFailed;
    } catch (const InconclusiveProbe &e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace spinrecon::cli
