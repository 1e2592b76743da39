// main.cpp -- the `mono` command-line tool.
//
// Exit codes: 0 success, 2 usage or schema violation, 3 capacity limit,
// 4 internal invariant violation.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mono/colouring.hpp"
#include "mono/counting.hpp"
#include "mono/equations.hpp"
#include "mono/experiment.hpp"
#include "mono/harmonic.hpp"
#include "mono/search.hpp"

namespace {

using nlohmann::json;
using namespace mono;

std::vector<i64> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<i64> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw usage_error(what + ": cannot parse integer '" + token + "'");
        }
    }
    return out;
}

double parse_real_or_fraction(const std::string& token, const std::string& what) {
    const auto slash = token.find('/');
    try {
        if (slash != std::string::npos) {
            const double num = std::stod(token.substr(0, slash));
            const double den = std::stod(token.substr(slash + 1));
            if (den == 0) throw std::invalid_argument(token);
            return num / den;
        }
        return std::stod(token);
    } catch (const std::exception&) {
        throw usage_error(what + ": cannot parse real '" + token + "'");
    }
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) out.push_back(parse_real_or_fraction(token, what));
    return out;
}

json json_count(u128 v) {
    if (v <= u128(~u64(0)) && u64(v) <= (u64(1) << 53)) return json(static_cast<u64>(v));
    return json(to_string_u128(v));
}

struct GlobalFlags {
    bool json_out = false;
};

void emit(const GlobalFlags& g, const json& payload, const std::string& human) {
    if (g.json_out)
        std::cout << payload.dump(2) << '\n';
    else
        std::cout << human;
}

// ---------------------------------------------------------------------------

int cmd_classify(const GlobalFlags& g, const std::string& quad, const std::string& lin) {
    equations::DiagonalEquation eq(parse_int_list(quad, "--quad"),
                                   lin.empty() ? std::vector<i64>{} : parse_int_list(lin, "--lin"));
    auto verdict = equations::classify(eq);
    json j;
    j["status"] = equations::to_string(verdict.status);
    j["justification"] = verdict.justification;
    if (verdict.witness) {
        j["witness"]["side"] =
            verdict.witness->side == equations::WitnessSide::Quadratic ? "quad" : "lin";
        j["witness"]["indices"] = verdict.witness->indices;
    }
    std::ostringstream os;
    os << equations::to_string(verdict.status) << " (" << verdict.justification << ")";
    if (verdict.witness) {
        os << " witness "
           << (verdict.witness->side == equations::WitnessSide::Quadratic ? "quad" : "lin") << " {";
        for (std::size_t i = 0; i < verdict.witness->indices.size(); ++i)
            os << (i ? "," : "") << verdict.witness->indices[i];
        os << "}";
    }
    os << '\n';
    emit(g, j, os.str());
    return 0;
}

int cmd_colouring_gen(const std::string& kind, i64 n, u64 r, u64 seed, i64 mod,
                      const std::string& out_path) {
    colourings::Colouring c = [&] {
        if (kind == "extremal") return colourings::extremal_colouring(n, r);
        if (kind == "congruence") return colourings::congruence_colouring(n, mod);
        if (kind == "random") return colourings::random_colouring(n, r, seed);
        throw usage_error("--kind must be extremal, congruence or random");
    }();
    colourings::save_colouring(c, out_path);
    std::cout << "wrote " << out_path << " (N=" << c.n() << ", r=" << c.r() << ")\n";
    return 0;
}

int cmd_count(const GlobalFlags& g, const std::string& quad, const std::string& lin,
              const std::string& colouring_path, bool per_colour, const std::string& engine) {
    equations::DiagonalEquation eq(parse_int_list(quad, "--quad"),
                                   lin.empty() ? std::vector<i64>{} : parse_int_list(lin, "--lin"));
    auto colouring = colourings::load_colouring(colouring_path);
    require(engine == "brute" || engine == "conv" || engine == "both",
            "--engine must be brute, conv or both");

    auto classes = colouring.all_classes();
    auto brute_class = [&](const std::vector<i64>& cls) -> u128 {
        counting::CountQuery q;
        for (i64 a : eq.quad_coeffs) q.lhs.push_back(counting::Term{a, 2, 1, cls});
        for (i64 b : eq.lin_coeffs) q.rhs.push_back(counting::Term{b, 1, 1, cls});
        return counting::count_brute(q);
    };

    std::vector<u128> counts;
    if (engine == "brute") {
        for (const auto& cls : classes) counts.push_back(brute_class(cls));
    } else {
        auto res = counting::count_monochromatic(eq, colouring);
        counts = res.per_colour;
        if (engine == "both") {
            for (std::size_t j = 0; j < classes.size(); ++j) {
                if (brute_class(classes[j]) != counts[j])
                    throw internal_error("engine mismatch on colour " + std::to_string(j + 1));
            }
        }
    }

    std::size_t argmax = 0;
    u128 total = 0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        total = checked_add_u128(total, counts[j]);
        if (counts[j] > counts[argmax]) argmax = j;
    }

    json j;
    j["n"] = colouring.n();
    j["r"] = colouring.r();
    j["engine"] = engine;
    j["argmax_colour"] = argmax + 1;
    j["max_count"] = json_count(counts[argmax]);
    j["total_monochromatic"] = json_count(total);
    json per = json::array();
    for (const auto& c : counts) per.push_back(json_count(c));
    j["per_colour"] = per;

    std::ostringstream os;
    if (per_colour) {
        for (std::size_t jx = 0; jx < counts.size(); ++jx)
            os << "colour " << (jx + 1) << ": " << to_string_u128(counts[jx]) << '\n';
    }
    os << "max colour " << (argmax + 1) << " with " << to_string_u128(counts[argmax])
       << " solutions; " << to_string_u128(total) << " monochromatic in total\n";
    emit(g, j, os.str());
    return 0;
}

int cmd_gauss(const GlobalFlags& g, i64 q, i64 a, i64 b) {
    const auto v = harmonic::gauss_sum(q, a, b);
    const double bound = double(gcd_i64(2 * a, q)) / double(q);
    json j;
    j["re"] = v.real();
    j["im"] = v.imag();
    j["abs"] = std::abs(v);
    j["abs_sq_bound"] = bound;
    std::ostringstream os;
    os.precision(12);
    os << "E = " << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag())
       << "i,  |E| = " << std::abs(v) << ",  gcd(2a,q)/q = " << bound << '\n';
    emit(g, j, os.str());
    return 0;
}

int cmd_majorant(i64 n, i64 w, i64 xi, std::size_t grid, const std::string& out_path) {
    auto nu = harmonic::build_majorant(n, w, xi);
    auto grid_vals = harmonic::majorant_fourier(nu, grid);
    std::ofstream out(out_path);
    require(out.good(), "cannot open for writing: " + out_path);
    out << "k,alpha,re,im,abs\n";
    out.precision(17);
    for (std::size_t k = 0; k < grid_vals.size(); ++k) {
        const double alpha = double(k) / double(grid_vals.size());
        out << k << ',' << alpha << ',' << grid_vals.values[k].real() << ','
            << grid_vals.values[k].imag() << ',' << std::abs(grid_vals.values[k]) << '\n';
    }
    std::cout << "wrote " << out_path << " (support " << nu.support.size() << ", l1 "
              << to_string_u128(nu.l1) << ")\n";
    return 0;
}

int cmd_moment(const GlobalFlags& g, const std::string& kind, int p, i64 n, i64 w) {
    require(kind == "mixed-quad-lin", "--kind must be mixed-quad-lin");
    const u128 m = harmonic::mixed_moment_quad_lin(n, w, p);
    json j;
    j["kind"] = kind;
    j["p"] = p;
    j["n"] = n;
    j["w"] = w;
    j["moment"] = json_count(m);
    std::ostringstream os;
    os << "moment = " << to_string_u128(m) << '\n';
    emit(g, j, os.str());
    return 0;
}

int cmd_bohr(i64 n, const std::string& theta, const std::string& beta, double eta, i64 c, i64 w,
             const std::string& out_path) {
    auto set = harmonic::quadratic_bohr_set(n, parse_real_list(theta, "--theta"),
                                            beta.empty() ? std::vector<double>{}
                                                         : parse_real_list(beta, "--beta"),
                                            eta, c, w);
    if (out_path.empty()) {
        for (i64 x : set) std::cout << x << '\n';
    } else {
        std::ofstream out(out_path);
        require(out.good(), "cannot open for writing: " + out_path);
        out << "x\n";
        for (i64 x : set) out << x << '\n';
        std::cout << "wrote " << out_path << " (" << set.size() << " elements)\n";
    }
    return 0;
}

int cmd_hindman(const GlobalFlags& g, const std::string& colouring_path, i64 limit,
                const std::string& lift) {
    auto base = colourings::load_colouring(colouring_path);
    require(lift.empty() || lift == "halving", "--lift only supports 'halving'");
    const colourings::Colouring c =
        lift.empty() ? base : colourings::lift_colouring(base, colourings::LiftMode::halving());
    const i64 lim = std::min<i64>(limit, c.n());
    auto configs = search::hindman_search(c, lim);

    json arr = json::array();
    std::ostringstream os;
    for (const auto& cfg : configs) {
        json jc;
        jc["x"] = cfg.x;
        jc["y"] = cfg.y;
        jc["sum"] = cfg.sum;
        jc["product"] = cfg.product;
        jc["degenerate"] = cfg.degenerate;
        os << cfg.x << ' ' << cfg.y << ' ' << cfg.sum << ' ' << cfg.product
           << (cfg.degenerate ? "  [degenerate]" : "");
        if (cfg.x % 2 == 0 && cfg.y % 2 == 0 && cfg.sum % 2 == 0 && cfg.product % 2 == 0) {
            const auto sol = search::config_to_bad_solution(cfg);
            jc["bad_case_solution"] = {sol.x1, sol.x2, sol.y, sol.z};
            os << "  ->  " << sol.x1 << "^2 - " << sol.x2 << "^2 = " << sol.y << "^2 + " << sol.z;
        }
        os << '\n';
        arr.push_back(jc);
    }
    emit(g, arr, os.str());
    return 0;
}

int cmd_experiment_run(const std::string& spec_path, const std::string& out_dir) {
    auto spec = experiment::load_spec(spec_path);
    auto outcome = experiment::run(spec, out_dir);
    std::cout << "results: " << outcome.results_csv_path << '\n';
    if (outcome.fit_ok)
        std::cout << "fit: slope " << outcome.fit.slope << " over " << outcome.fit.points_used
                  << " points (" << outcome.fit_json_path << ")\n";
    else
        std::cout << "fit unavailable: " << outcome.fit_message << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monochromatic solution counting for diagonal linear-quadratic equations"};
    app.require_subcommand(1);
    GlobalFlags g;
    app.add_flag("--json", g.json_out, "machine-readable JSON on stdout");

    // classify
    std::string quad, lin;
    auto* classify = app.add_subcommand("classify", "decide partition regularity");
    classify->add_option("--quad", quad, "quadratic coefficients, e.g. 1,-1,-1");
    classify->add_option("--lin", lin, "linear coefficients, e.g. 1");

    // colouring gen
    auto* colouring = app.add_subcommand("colouring", "colouring utilities");
    auto* gen = colouring->add_subcommand("gen", "generate a colouring file");
    std::string ckind = "extremal", cout_path;
    i64 cn = 0, cmod = 2;
    u64 cr = 1, cseed = 0;
    gen->add_option("--kind", ckind, "extremal|congruence|random");
    gen->add_option("--n", cn, "domain size N")->required();
    gen->add_option("--r", cr, "number of colours");
    gen->add_option("--seed", cseed, "seed for random colourings");
    gen->add_option("--mod", cmod, "modulus for congruence colourings");
    gen->add_option("-o,--out", cout_path, "output file")->required();

    // count
    auto* count = app.add_subcommand("count", "count monochromatic solutions");
    std::string qquad, qlin, qcolouring, qengine = "conv";
    bool per_colour = false;
    count->add_option("--quad", qquad, "quadratic coefficients");
    count->add_option("--lin", qlin, "linear coefficients");
    count->add_option("--colouring", qcolouring, "colouring file")->required();
    count->add_flag("--per-colour", per_colour, "print every colour class");
    count->add_option("--engine", qengine, "brute|conv|both");

    // expsum
    auto* expsum = app.add_subcommand("expsum", "exponential sums and moments");
    auto* gauss = expsum->add_subcommand("gauss", "quadratic Gauss sum mean");
    i64 gq = 1, ga = 0, gb = 0;
    gauss->add_option("--q", gq, "modulus")->required();
    gauss->add_option("--a", ga, "quadratic coefficient")->required();
    gauss->add_option("--b", gb, "linear coefficient");
    auto* maj = expsum->add_subcommand("majorant", "square majorant transform grid");
    i64 mn = 0, mw = 2, mxi = 1;
    std::size_t mgrid = 1024;
    std::string mout;
    maj->add_option("--n", mn, "range N")->required();
    maj->add_option("--w", mw, "even W");
    maj->add_option("--xi", mxi, "residue xi coprime to W");
    maj->add_option("--grid", mgrid, "grid size M");
    maj->add_option("-o,--out", mout, "output CSV")->required();
    auto* mom = expsum->add_subcommand("moment", "exact torus moments");
    std::string momkind = "mixed-quad-lin";
    int momp = 4;
    i64 momn = 0, momw = 1;
    mom->add_option("--kind", momkind, "mixed-quad-lin");
    mom->add_option("--p", momp, "even exponent in {2,4,6,8}");
    mom->add_option("--n", momn, "range N")->required();
    mom->add_option("--w", momw, "scale W");

    // bohr
    auto* bohr = app.add_subcommand("bohr", "quadratic Bohr set scan");
    std::string btheta, bbeta, bout;
    i64 bn = 0, bc = 1, bw = 1;
    double beta_eta = 0.1;
    bohr->add_option("--n", bn, "scan range N")->required();
    bohr->add_option("--theta", btheta, "quadratic frequencies (reals or p/q)")->required();
    bohr->add_option("--beta", bbeta, "linear frequencies");
    bohr->add_option("--eta", beta_eta, "width eta");
    bohr->add_option("--c", bc, "divisibility c");
    bohr->add_option("--w", bw, "scale W");
    bohr->add_option("-o,--out", bout, "output CSV (stdout if omitted)");

    // hindman
    auto* hindman = app.add_subcommand("hindman", "search {x, y, x+y, xy} configurations");
    std::string hcolouring, hlift;
    i64 hlimit = 0;
    hindman->add_option("--colouring", hcolouring, "colouring file")->required();
    hindman->add_option("--limit", hlimit, "search x <= y <= limit")->required();
    hindman->add_option("--lift", hlift, "apply a lift first (halving)");

    // experiment
    auto* experiment_cmd = app.add_subcommand("experiment", "declarative experiments");
    auto* runcmd = experiment_cmd->add_subcommand("run", "run a JSON experiment spec");
    std::string spec_path, exp_out;
    runcmd->add_option("spec", spec_path, "spec JSON file")->required();
    runcmd->add_option("-o,--out", exp_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (classify->parsed()) return cmd_classify(g, quad, lin);
        if (gen->parsed()) return cmd_colouring_gen(ckind, cn, cr, cseed, cmod, cout_path);
        if (count->parsed()) return cmd_count(g, qquad, qlin, qcolouring, per_colour, qengine);
        if (gauss->parsed()) return cmd_gauss(g, gq, ga, gb);
        if (maj->parsed()) return cmd_majorant(mn, mw, mxi, mgrid, mout);
        if (mom->parsed()) return cmd_moment(g, momkind, momp, momn, momw);
        if (bohr->parsed()) return cmd_bohr(bn, btheta, bbeta, beta_eta, bc, bw, bout);
        if (hindman->parsed()) return cmd_hindman(g, hcolouring, hlimit, hlift);
        if (runcmd->parsed()) return cmd_experiment_run(spec_path, exp_out);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return 3;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
}
