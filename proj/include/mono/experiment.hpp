// experiment.hpp -- declarative experiment specs and the runner that turns
// them into results.csv, fit.json and plot.gp on disk.  Reruns with the same
// spec and seed are byte-identical; wall-clock timestamps go to a sidecar log.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mono/colouring.hpp"
#include "mono/common.hpp"
#include "mono/counting.hpp"
#include "mono/equations.hpp"

namespace mono::experiment {

struct ColouringFamily {
    enum Kind { Extremal, Congruence, Random } kind = Extremal;
    u64 r = 1;        // Extremal / Random
    i64 modulus = 2;  // Congruence

    u64 classes() const { return kind == Congruence ? static_cast<u64>(modulus) : r; }
    colourings::Colouring build(i64 n, u64 seed) const;
};

struct ExperimentSpec {
    enum Kind { Scaling, MomentScan, HypothesisCheck } kind = Scaling;

    // scaling
    std::optional<equations::DiagonalEquation> equation;
    std::optional<ColouringFamily> colouring;

    // moment-scan
    int moment_p = 4;
    std::string moment_kind = "mixed-quad-lin";

    // hypothesis-check: "hua", "decay" or "minor-arc"
    std::string check = "hua";
    i64 xi = 1;

    std::vector<i64> n_grid;
    std::vector<i64> w_grid = {1};
    u64 seed = 0;
    bool seed_present = false;
};

// Parses and validates a JSON spec document; violations raise usage_error with
// the offending field path.
ExperimentSpec parse_spec_json(const std::string& text);
ExperimentSpec load_spec(const std::string& path);

struct RunOutcome {
    bool fit_ok = false;
    counting::PowerFit fit;
    std::string fit_message;  // set when the fit was not possible
    std::string results_csv_path, fit_json_path, plot_path;
};

RunOutcome run(const ExperimentSpec& spec, const std::string& out_dir);

// Scaling rows are also available programmatically (used by the CLI and by
// the acceptance suite).
struct ScalingRow {
    i64 n;
    u64 r;
    std::vector<u128> per_colour;
    u128 max_count;
    std::size_t argmax_colour;
};

std::vector<ScalingRow> scaling_rows(const equations::DiagonalEquation& eq,
                                     const ColouringFamily& family,
                                     const std::vector<i64>& n_grid, u64 seed);

}  // namespace mono::experiment
