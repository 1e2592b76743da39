// experiment.cpp
#include "mono/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mono/harmonic.hpp"

namespace mono::experiment {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
    throw usage_error("spec." + path + ": " + what);
}

std::vector<i64> parse_grid(const json& j, const std::string& path, std::size_t min_points) {
    if (!j.is_array() || j.empty()) bad_field(path, "must be a nonempty array of integers");
    std::vector<i64> grid;
    for (const auto& v : j) {
        if (!v.is_number_integer()) bad_field(path, "entries must be integers");
        grid.push_back(v.get<i64>());
        if (grid.back() < 1) bad_field(path, "entries must be positive");
    }
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) bad_field(path, "must be strictly increasing");
    if (grid.size() < min_points)
        bad_field(path, "needs at least " + std::to_string(min_points) + " points");
    return grid;
}

ColouringFamily parse_family(const json& j) {
    if (!j.is_object()) bad_field("colouring", "must be an object");
    if (!j.contains("kind") || !j.at("kind").is_string())
        bad_field("colouring.kind", "must be one of extremal|congruence|random");
    const std::string kind = j.at("kind").get<std::string>();
    ColouringFamily fam;
    if (kind == "extremal" || kind == "random") {
        fam.kind = kind == "extremal" ? ColouringFamily::Extremal : ColouringFamily::Random;
        if (!j.contains("r") || !j.at("r").is_number_integer() || j.at("r").get<i64>() < 1)
            bad_field("colouring.r", "must be a positive integer");
        fam.r = j.at("r").get<u64>();
    } else if (kind == "congruence") {
        fam.kind = ColouringFamily::Congruence;
        if (!j.contains("mod") || !j.at("mod").is_number_integer() || j.at("mod").get<i64>() < 1)
            bad_field("colouring.mod", "must be a positive integer");
        fam.modulus = j.at("mod").get<i64>();
    } else {
        bad_field("colouring.kind", "unknown kind '" + kind + "'");
    }
    return fam;
}

double minor_arc_sup(i64 n, i64 w_param, i64 xi, u64 seed) {
    harmonic::Majorant nu = harmonic::build_majorant(n, w_param, xi);
    SplitMix64 rng(seed);
    double sup = 0;
    int kept = 0;
    int attempts = 0;
    while (kept < 200 && attempts < 200000) {
        ++attempts;
        const double alpha = rng.unit();
        auto approx = harmonic::rational_approx(alpha, 50);
        if (approx.err <= 50.0 / double(n)) continue;  // inside a major arc
        ++kept;
        sup = std::max(sup, std::abs(harmonic::majorant_transform(nu, alpha)) / double(nu.l1));
    }
    require(kept == 200, "minor-arc check: could not find 200 minor-arc samples");
    return sup;
}

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

}  // namespace

colourings::Colouring ColouringFamily::build(i64 n, u64 seed) const {
    switch (kind) {
        case Extremal: return colourings::extremal_colouring(n, r);
        case Congruence: return colourings::congruence_colouring(n, modulus);
        case Random: return colourings::random_colouring(n, r, seed);
    }
    throw internal_error("unreachable colouring family kind");
}

ExperimentSpec parse_spec_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw usage_error(std::string("spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw usage_error("spec: document must be a JSON object");
    if (!j.contains("kind") || !j.at("kind").is_string())
        bad_field("kind", "must be one of scaling|moment-scan|hypothesis-check");

    ExperimentSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer()) bad_field("seed", "must be a 64-bit integer");
        spec.seed = j.at("seed").get<u64>();
        spec.seed_present = true;
    }

    if (kind == "scaling") {
        spec.kind = ExperimentSpec::Scaling;
        if (!j.contains("equation") || !j.at("equation").is_object())
            bad_field("equation", "must be an object with quad/lin arrays");
        const auto& je = j.at("equation");
        auto read_coeffs = [&](const char* key) {
            std::vector<i64> out;
            if (!je.contains(key)) return out;
            if (!je.at(key).is_array())
                bad_field(std::string("equation.") + key, "must be an array");
            for (const auto& v : je.at(key)) {
                if (!v.is_number_integer() || v.get<i64>() == 0)
                    bad_field(std::string("equation.") + key, "entries must be nonzero integers");
                out.push_back(v.get<i64>());
            }
            return out;
        };
        try {
            spec.equation.emplace(read_coeffs("quad"), read_coeffs("lin"));
        } catch (const usage_error& e) {
            bad_field("equation", e.what());
        }
        if (!j.contains("colouring")) bad_field("colouring", "required for scaling experiments");
        spec.colouring = parse_family(j.at("colouring"));
        if (!j.contains("n_grid")) bad_field("n_grid", "required");
        spec.n_grid = parse_grid(j.at("n_grid"), "n_grid", 4);
        if (spec.colouring->kind == ColouringFamily::Random && !spec.seed_present)
            bad_field("seed", "required when the colouring family is random");
    } else if (kind == "moment-scan") {
        spec.kind = ExperimentSpec::MomentScan;
        if (!j.contains("moment") || !j.at("moment").is_object())
            bad_field("moment", "must be an object with kind and p");
        const auto& jm = j.at("moment");
        if (!jm.contains("kind") || !jm.at("kind").is_string())
            bad_field("moment.kind", "must be 'mixed-quad-lin'");
        spec.moment_kind = jm.at("kind").get<std::string>();
        if (spec.moment_kind != "mixed-quad-lin")
            bad_field("moment.kind", "unknown kind '" + spec.moment_kind + "'");
        if (!jm.contains("p") || !jm.at("p").is_number_integer())
            bad_field("moment.p", "must be an even integer in {2,4,6,8}");
        spec.moment_p = jm.at("p").get<int>();
        if (spec.moment_p != 2 && spec.moment_p != 4 && spec.moment_p != 6 && spec.moment_p != 8)
            bad_field("moment.p", "must be one of 2, 4, 6, 8");
        if (!j.contains("n_grid")) bad_field("n_grid", "required");
        spec.n_grid = parse_grid(j.at("n_grid"), "n_grid", 1);
        if (j.contains("w_grid")) spec.w_grid = parse_grid(j.at("w_grid"), "w_grid", 1);
    } else if (kind == "hypothesis-check") {
        spec.kind = ExperimentSpec::HypothesisCheck;
        if (!j.contains("check") || !j.at("check").is_string())
            bad_field("check", "must be one of hua|decay|minor-arc");
        spec.check = j.at("check").get<std::string>();
        if (spec.check != "hua" && spec.check != "decay" && spec.check != "minor-arc")
            bad_field("check", "unknown check '" + spec.check + "'");
        if (!j.contains("n_grid")) bad_field("n_grid", "required");
        spec.n_grid = parse_grid(j.at("n_grid"), "n_grid", 1);
        if (j.contains("w_grid")) spec.w_grid = parse_grid(j.at("w_grid"), "w_grid", 1);
        if (j.contains("xi")) {
            if (!j.at("xi").is_number_integer() || j.at("xi").get<i64>() < 1)
                bad_field("xi", "must be a positive integer");
            spec.xi = j.at("xi").get<i64>();
        }
        if (spec.check == "minor-arc" && !spec.seed_present)
            bad_field("seed", "required for the minor-arc check");
    } else {
        bad_field("kind", "unknown kind '" + kind + "'");
    }
    return spec;
}

ExperimentSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_json(buf.str());
}

std::vector<ScalingRow> scaling_rows(const equations::DiagonalEquation& eq,
                                     const ColouringFamily& family,
                                     const std::vector<i64>& n_grid, u64 seed) {
    std::vector<ScalingRow> rows(n_grid.size());
    SplitMix64 root(seed);
    std::vector<u64> point_seeds(n_grid.size());
    for (std::size_t i = 0; i < n_grid.size(); ++i) point_seeds[i] = root.split(i).state;

    parallel_for(n_grid.size(), [&](std::size_t i) {
        const i64 n = n_grid[i];
        auto colouring = family.build(n, point_seeds[i]);
        auto counts = counting::count_monochromatic(eq, colouring);
        rows[i] = {n, colouring.r(), counts.per_colour, counts.max_count, counts.argmax_colour};
    });
    return rows;
}

RunOutcome run(const ExperimentSpec& spec, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string started = iso_now();

    std::string header;
    std::vector<std::string> csv_rows;
    std::vector<std::pair<double, double>> fit_pts;
    std::string fit_against;
    int x_column = 1;

    if (spec.kind == ExperimentSpec::Scaling) {
        header = "N,r,colour,count";
        fit_against = "N";
        x_column = 1;
        auto srows = scaling_rows(*spec.equation, *spec.colouring, spec.n_grid, spec.seed);
        for (const auto& r : srows) {
            for (std::size_t j = 0; j < r.per_colour.size(); ++j) {
                std::ostringstream os;
                os << r.n << ',' << r.r << ',' << (j + 1) << ','
                   << to_string_u128(r.per_colour[j]);
                csv_rows.push_back(os.str());
            }
            fit_pts.push_back({double(r.n), double(r.max_count)});
        }
    } else {
        // A (N, W) product grid, N-major; each point computes one value.
        std::vector<std::pair<i64, i64>> points;
        for (i64 n : spec.n_grid)
            for (i64 w : spec.w_grid) points.push_back({n, w});
        std::vector<std::string> values(points.size());
        std::vector<double> yvals(points.size());

        if (spec.kind == ExperimentSpec::MomentScan) {
            header = "N,W,p,moment";
            parallel_for(points.size(), [&](std::size_t i) {
                const auto [n, w] = points[i];
                const u128 m = harmonic::mixed_moment_quad_lin(n, w, spec.moment_p);
                values[i] = to_string_u128(m);
                yvals[i] = double(m);
            });
            for (std::size_t i = 0; i < points.size(); ++i) {
                std::ostringstream os;
                os << points[i].first << ',' << points[i].second << ',' << spec.moment_p << ','
                   << values[i];
                csv_rows.push_back(os.str());
            }
        } else {
            header = "N,W,check,value";
            parallel_for(points.size(), [&](std::size_t i) {
                const auto [n, w] = points[i];
                double v = 0;
                if (spec.check == "hua") {
                    v = harmonic::hua_ratio(n, w, spec.xi);
                } else if (spec.check == "decay") {
                    v = harmonic::fourier_decay_sup(n, w, spec.xi, 4096);
                } else {
                    v = minor_arc_sup(n, w, spec.xi, spec.seed);
                }
                std::ostringstream os;
                os.precision(17);
                os << v;
                values[i] = os.str();
                yvals[i] = v;
            });
            for (std::size_t i = 0; i < points.size(); ++i) {
                std::ostringstream os;
                os << points[i].first << ',' << points[i].second << ',' << spec.check << ','
                   << values[i];
                csv_rows.push_back(os.str());
            }
        }

        const bool scan_w = spec.w_grid.size() > 1 && spec.n_grid.size() == 1;
        fit_against = scan_w ? "W" : "N";
        x_column = scan_w ? 2 : 1;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (scan_w) {
                fit_pts.push_back({double(points[i].second), yvals[i]});
            } else if (points[i].second == spec.w_grid.front()) {
                fit_pts.push_back({double(points[i].first), yvals[i]});
            }
        }
    }

    RunOutcome out;
    try {
        out.fit = counting::fit_power_law(fit_pts);
        out.fit_ok = true;
    } catch (const fit_error& e) {
        out.fit_message = e.what();
    }

    const fs::path dir(out_dir);
    out.results_csv_path = (dir / "results.csv").string();
    out.fit_json_path = (dir / "fit.json").string();
    out.plot_path = (dir / "plot.gp").string();

    {
        std::ofstream csv(out.results_csv_path);
        require(csv.good(), "cannot write results.csv in " + out_dir);
        csv << header << '\n';
        for (const auto& row : csv_rows) csv << row << '\n';
    }

    {
        json jf;
        jf["fit_against"] = fit_against;
        if (out.fit_ok) {
            jf["slope"] = out.fit.slope;
            jf["intercept"] = out.fit.intercept;
            jf["points_used"] = out.fit.points_used;
            jf["residuals"] = out.fit.residuals;
        } else {
            jf["slope"] = nullptr;
            jf["error"] = out.fit_message;
        }
        json pts = json::array();
        for (const auto& [x, y] : fit_pts) pts.push_back({{"x", x}, {"y", y}});
        jf["points"] = pts;
        std::ofstream fj(out.fit_json_path);
        require(fj.good(), "cannot write fit.json in " + out_dir);
        fj << jf.dump(2) << '\n';
    }

    {
        std::ofstream gp(out.plot_path);
        require(gp.good(), "cannot write plot.gp in " + out_dir);
        gp << "# gnuplot >= 5\n"
           << "set datafile separator ','\n"
           << "set logscale xy\n"
           << "set key top left\n"
           << "set xlabel '" << fit_against << "'\n"
           << "set ylabel 'value'\n";
        if (out.fit_ok) {
            gp << "fit_slope = " << out.fit.slope << "\n"
               << "fit_intercept = " << out.fit.intercept << "\n"
               << "f(x) = exp(fit_intercept) * x**fit_slope\n"
               << "plot 'results.csv' skip 1 using " << x_column
               << ":4 with points pt 7 title 'data', f(x) with lines title sprintf('slope %.3f', "
                  "fit_slope)\n";
        } else {
            gp << "plot 'results.csv' skip 1 using " << x_column
               << ":4 with points pt 7 title 'data'\n";
        }
    }

    {
        std::ofstream log(dir / "run.log", std::ios::app);
        log << "started " << started << "\nfinished " << iso_now() << '\n';
    }
    return out;
}

}  // namespace mono::experiment
