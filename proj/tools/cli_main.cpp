// tongue-atlas: periodic orbits, tongue boundaries, stability borders and
// period-doubling cascades of the kicked torus map, exported as CSV/JSON.

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <tongue_atlas.h>

#include "cli_config.hpp"
#include "output.hpp"

namespace {

using nlohmann::json;

struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(ta_status status, const char* where) {
    if (status == TA_OK) return;
    const std::string msg = std::string(where) + ": " + ta_last_error();
    if (status == TA_ERR_INVALID_ARGUMENT) throw ValidationFailure(msg);
    throw NumericalFailure(msg);
}

int env_threads() {
    const char* v = std::getenv("TONGUE_ATLAS_THREADS");
    if (!v || !*v) return 1;
    const int n = std::atoi(v);
    return n < 0 ? 1 : n;  // 0 = auto, resolved by the library
}

const char* stability_name(int s) {
    switch (s) {
        case TA_STABLE: return "stable";
        case TA_UNSTABLE: return "unstable";
        case TA_MARGINAL: return "marginal";
    }
    return "?";
}

const char* case_name(int c) {
    switch (c) {
        case TA_CASE_A: return "A";
        case TA_CASE_B_PLUS: return "B_plus";
        case TA_CASE_B_MINUS: return "B_minus";
    }
    return "none";
}

json orbit_list_json(const ta_orbit_list* list) {
    json arr = json::array();
    for (size_t i = 0; i < ta_orbit_list_size(list); ++i) {
        ta_orbit_info info{};
        check(ta_orbit_info_get(list, i, &info), "orbit info");
        json pts = json::array();
        for (int n = 0; n < info.period; ++n) {
            ta_point pt{};
            check(ta_orbit_point_get(list, i, static_cast<size_t>(n), &pt), "orbit point");
            pts.push_back({pt.theta, pt.momentum});
        }
        arr.push_back({{"period", info.period},
                       {"winding_j", info.winding_j},
                       {"winding_s", info.winding_s},
                       {"trace", info.trace},
                       {"stability", stability_name(info.stability)},
                       {"involution_case", case_name(info.involution_case)},
                       {"theta0", info.theta0},
                       {"points", pts}});
    }
    return arr;
}

struct OrbitListGuard {
    ta_orbit_list* list = nullptr;
    ~OrbitListGuard() { ta_orbit_list_free(list); }
};
struct CurveGuard {
    ta_curve* curve = nullptr;
    ~CurveGuard() { ta_curve_free(curve); }
};
struct CascadeGuard {
    ta_cascade* cascade = nullptr;
    ~CascadeGuard() { ta_cascade_free(cascade); }
};
struct CensusGuard {
    ta_census* census = nullptr;
    ~CensusGuard() { ta_census_free(census); }
};
struct PortraitGuard {
    ta_portrait* portrait = nullptr;
    ~PortraitGuard() { ta_portrait_free(portrait); }
};

// ---- subcommand payload builders -------------------------------------------

std::string run_portrait(const cli::RunConfig& cfg, double k, double omega, int n_seeds,
                         int n_iters) {
    ta_map_params params{k, omega, TA_CASE_A};
    PortraitGuard g;
    check(ta_portrait_run(&params, n_seeds, n_iters, &g.portrait), "portrait");
    if (cfg.output_format == "csv") {
        cli::CsvWriter csv({"seed_id", "iter", "theta", "J"});
        for (size_t i = 0; i < ta_portrait_size(g.portrait); ++i) {
            int sid = 0, iter = 0;
            ta_point pt{};
            check(ta_portrait_get(g.portrait, i, &sid, &iter, &pt), "portrait row");
            csv.row({std::to_string(sid), std::to_string(iter), cli::fmt_double(pt.theta),
                     cli::fmt_double(pt.momentum)});
        }
        return csv.str();
    }
    json rows = json::array();
    for (size_t i = 0; i < ta_portrait_size(g.portrait); ++i) {
        int sid = 0, iter = 0;
        ta_point pt{};
        check(ta_portrait_get(g.portrait, i, &sid, &iter, &pt), "portrait row");
        rows.push_back({sid, iter, pt.theta, pt.momentum});
    }
    return cli::dump_json(json{{"schema", 1},
                               {"command", "portrait"},
                               {"k", k},
                               {"omega", omega},
                               {"n_seeds", n_seeds},
                               {"n_iters", n_iters},
                               {"columns", {"seed_id", "iter", "theta", "J"}},
                               {"rows", rows}});
}

std::string run_orbits(const cli::RunConfig& cfg, int p, int j, double k, double omega) {
    const ta_finder_config fc = cfg.finder();
    OrbitListGuard g;
    check(ta_find_orbits_all_cases(k, omega, p, j, &fc, &g.list), "orbits");
    if (cfg.output_format == "csv") {
        cli::CsvWriter csv({"orbit_id", "period", "winding_j", "winding_s", "trace", "stability",
                            "involution_case", "point_index", "theta", "J"});
        for (size_t i = 0; i < ta_orbit_list_size(g.list); ++i) {
            ta_orbit_info info{};
            check(ta_orbit_info_get(g.list, i, &info), "orbit info");
            for (int n = 0; n < info.period; ++n) {
                ta_point pt{};
                check(ta_orbit_point_get(g.list, i, static_cast<size_t>(n), &pt), "orbit point");
                csv.row({std::to_string(i), std::to_string(info.period),
                         std::to_string(info.winding_j), std::to_string(info.winding_s),
                         cli::fmt_double(info.trace), stability_name(info.stability),
                         case_name(info.involution_case), std::to_string(n),
                         cli::fmt_double(pt.theta), cli::fmt_double(pt.momentum)});
            }
        }
        return csv.str();
    }
    return cli::dump_json(json{{"schema", 1},
                               {"command", "orbits"},
                               {"p", p},
                               {"j", j},
                               {"k", k},
                               {"omega", omega},
                               {"orbits", orbit_list_json(g.list)}});
}

std::string run_edges(const cli::RunConfig& cfg, int p, int j, double k_max, double step) {
    if (step <= 0.0) step = k_max > 0.0 ? k_max / 50.0 : 1.0;
    std::vector<std::array<double, 3>> rows;
    for (double k = 0.0; k <= k_max * (1.0 + 1e-12); k += step) {
        double lo = 0.0, hi = 0.0;
        check(ta_tongue_edges(p, j, k, &lo, &hi), "edges");
        rows.push_back({k, lo, hi});
    }
    if (cfg.output_format == "csv") {
        cli::CsvWriter csv({"k", "omega_minus", "omega_plus"});
        for (const auto& r : rows)
            csv.row({cli::fmt_double(r[0]), cli::fmt_double(r[1]), cli::fmt_double(r[2])});
        return csv.str();
    }
    json arr = json::array();
    for (const auto& r : rows) arr.push_back({r[0], r[1], r[2]});
    return cli::dump_json(json{{"schema", 1},
                               {"command", "edges"},
                               {"p", p},
                               {"j", j},
                               {"columns", {"k", "omega_minus", "omega_plus"}},
                               {"rows", arr}});
}

std::string run_boundary(const cli::RunConfig& cfg, int p, int j, const std::string& side,
                         double k_max, double step) {
    const ta_finder_config fc = cfg.finder();
    std::vector<int> sides;
    if (side == "left") sides = {TA_SIDE_LEFT};
    else if (side == "right") sides = {TA_SIDE_RIGHT};
    else sides = {TA_SIDE_LEFT, TA_SIDE_RIGHT};

    json jrows = json::array();
    cli::CsvWriter csv({"side", "k", "omega", "f_ext"});
    for (int s : sides) {
        CurveGuard g;
        check(ta_trace_tongue_boundary(p, j, s, k_max, step, &fc, &g.curve), "boundary");
        for (size_t i = 0; i < ta_curve_size(g.curve); ++i) {
            double k = 0, omega = 0, aux = 0;
            check(ta_curve_get(g.curve, i, &k, &omega, &aux), "boundary sample");
            const char* name = (s == TA_SIDE_LEFT) ? "left" : "right";
            csv.row({name, cli::fmt_double(k), cli::fmt_double(omega), cli::fmt_double(aux)});
            jrows.push_back({name, k, omega, aux});
        }
    }
    if (cfg.output_format == "csv") return csv.str();
    return cli::dump_json(json{{"schema", 1},
                               {"command", "boundary"},
                               {"p", p},
                               {"j", j},
                               {"columns", {"side", "k", "omega", "f_ext"}},
                               {"rows", jrows}});
}

std::string run_border(const cli::RunConfig& cfg, int p, int j, double omega_min, double omega_max,
                       double step, double k_max) {
    const ta_finder_config fc = cfg.finder();
    CurveGuard g;
    check(ta_trace_stability_border(p, j, omega_min, omega_max, step, k_max, &fc, &g.curve),
          "border");
    if (cfg.output_format == "csv") {
        cli::CsvWriter csv({"omega", "k", "trace"});
        for (size_t i = 0; i < ta_curve_size(g.curve); ++i) {
            double k = 0, omega = 0, trace = 0;
            check(ta_curve_get(g.curve, i, &k, &omega, &trace), "border sample");
            csv.row({cli::fmt_double(omega), cli::fmt_double(k), cli::fmt_double(trace)});
        }
        return csv.str();
    }
    json rows = json::array();
    for (size_t i = 0; i < ta_curve_size(g.curve); ++i) {
        double k = 0, omega = 0, trace = 0;
        check(ta_curve_get(g.curve, i, &k, &omega, &trace), "border sample");
        rows.push_back({omega, k, trace});
    }
    return cli::dump_json(json{{"schema", 1},
                               {"command", "border"},
                               {"p", p},
                               {"j", j},
                               {"columns", {"omega", "k", "trace"}},
                               {"rows", rows}});
}

std::string run_cascade(const cli::RunConfig& cfg, int p, int j, double omega, int n_max) {
    const ta_finder_config fc = cfg.finder();
    CascadeGuard g;
    check(ta_follow_cascade(p, j, omega, n_max, &fc, &g.cascade), "cascade");
    double delta = 0, alpha = 0, k_inf = 0;
    int truncated = 0;
    check(ta_cascade_summary(g.cascade, &delta, &alpha, &k_inf, &truncated), "cascade summary");
    int offset = 0;
    check(ta_cascade_dtheta_offset(g.cascade, &offset), "cascade offset");

    std::vector<double> ks(ta_cascade_k_count(g.cascade));
    for (size_t i = 0; i < ks.size(); ++i) check(ta_cascade_k_get(g.cascade, i, &ks[i]), "k");
    std::vector<double> dths(ta_cascade_dtheta_count(g.cascade));
    for (size_t i = 0; i < dths.size(); ++i)
        check(ta_cascade_dtheta_get(g.cascade, i, &dths[i]), "dtheta");

    if (cfg.output_format == "csv") {
        cli::CsvWriter csv({"n", "k", "dtheta"});
        for (size_t i = 0; i < ks.size(); ++i) {
            const long long d_index = static_cast<long long>(i) - offset;
            const bool has_d = d_index >= 0 && d_index < static_cast<long long>(dths.size());
            csv.row({std::to_string(i), cli::fmt_double(ks[i]),
                     has_d ? cli::fmt_double(dths[static_cast<size_t>(d_index)]) : ""});
        }
        return csv.str();
    }
    json out{{"schema", 1},          {"command", "cascade"},  {"p", p},
             {"j", j},               {"omega", omega},        {"n_max", n_max},
             {"k_values", ks},       {"dtheta_values", dths}, {"dtheta_offset", offset},
             {"delta_est", delta},   {"alpha_est", alpha},    {"k_infinity", k_inf},
             {"truncated", truncated != 0}};
    if (ks.size() >= 3) {
        double ddev = 0, adev = 0;
        check(ta_universality_check(g.cascade, &ddev, &adev), "universality");
        out["delta_deviation"] = ddev;
        out["alpha_deviation"] = adev;
    }
    return cli::dump_json(out);
}

std::string run_census(const cli::RunConfig& cfg, double k_min, double k_max, double omega_min,
                       double omega_max, int grid_k, int grid_omega, int p_max) {
    const ta_finder_config fc = cfg.finder();
    CensusGuard g;
    check(ta_census_run(k_min, k_max, omega_min, omega_max, grid_k, grid_omega, p_max,
                        env_threads(), &fc, &g.census),
          "census");
    if (cfg.output_format == "csv") {
        cli::CsvWriter csv({"cell_k", "cell_omega", "k", "omega", "p", "j", "n_stable",
                            "n_unstable", "n_marginal"});
        for (size_t i = 0; i < ta_census_size(g.census); ++i) {
            ta_census_row row{};
            check(ta_census_get(g.census, i, &row), "census row");
            csv.row({std::to_string(row.cell_k), std::to_string(row.cell_omega),
                     cli::fmt_double(row.k), cli::fmt_double(row.omega),
                     std::to_string(row.period), std::to_string(row.winding_j),
                     std::to_string(row.n_stable), std::to_string(row.n_unstable),
                     std::to_string(row.n_marginal)});
        }
        return csv.str();
    }
    json rows = json::array();
    for (size_t i = 0; i < ta_census_size(g.census); ++i) {
        ta_census_row row{};
        check(ta_census_get(g.census, i, &row), "census row");
        rows.push_back({{"cell_k", row.cell_k},
                        {"cell_omega", row.cell_omega},
                        {"k", row.k},
                        {"omega", row.omega},
                        {"p", row.period},
                        {"j", row.winding_j},
                        {"n_stable", row.n_stable},
                        {"n_unstable", row.n_unstable},
                        {"n_marginal", row.n_marginal}});
    }
    return cli::dump_json(json{{"schema", 1}, {"command", "census"}, {"rows", rows}});
}

std::string run_gauss(const cli::RunConfig& cfg, int p_max) {
    if (p_max < 1) throw ValidationFailure("gauss: --p-max must be >= 1");
    struct Row {
        long long p, j, l;
        const char* cname;
        double magnitude, xi, mag_err, phase_err;
    };
    std::vector<Row> rows;
    for (long long p = 1; p <= p_max; ++p) {
        for (long long j = 1; j <= p; ++j) {
            if (std::gcd(j, p) != 1) continue;
            const bool odd = (p % 2 != 0);
            const std::vector<int> cases =
                odd ? std::vector<int>{TA_CASE_A}
                    : std::vector<int>{TA_CASE_B_PLUS, TA_CASE_B_MINUS};
            for (int c : cases) {
                double xi = 0;
                check(ta_xi_phase(p, j, c, &xi), "xi");
                int64_t l = 0;
                check(ta_gauss_case_l(p, j, c, &l), "case l");
                double re = 0, im = 0;
                check(ta_gauss_sum_direct(p, j, l, &re, &im), "gauss sum");
                const double mag = std::hypot(re, im);
                const double phase = std::atan2(im, re);
                const double mag_err = std::fabs(mag - std::sqrt(static_cast<double>(p)));
                double dphi = std::remainder(phase - xi, 2.0 * 3.14159265358979323846);
                rows.push_back({p, j, l, case_name(c), mag, xi, mag_err, std::fabs(dphi)});
            }
        }
    }
    if (cfg.output_format == "csv") {
        cli::CsvWriter csv({"p", "j", "case", "l", "magnitude", "xi", "mag_error", "phase_error"});
        for (const auto& r : rows)
            csv.row({std::to_string(r.p), std::to_string(r.j), r.cname, std::to_string(r.l),
                     cli::fmt_double(r.magnitude), cli::fmt_double(r.xi),
                     cli::fmt_double(r.mag_err), cli::fmt_double(r.phase_err)});
        return csv.str();
    }
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"p", r.p},
                       {"j", r.j},
                       {"case", r.cname},
                       {"l", r.l},
                       {"magnitude", r.magnitude},
                       {"xi", r.xi},
                       {"mag_error", r.mag_err},
                       {"phase_error", r.phase_err}});
    return cli::dump_json(json{{"schema", 1}, {"command", "gauss"}, {"rows", arr}});
}

std::string run_resonance3(const cli::RunConfig& cfg) {
    ta_resonance3 r{};
    check(ta_resonance3_eta(&r), "resonance3");
    if (cfg.output_format == "csv") {
        cli::CsvWriter csv({"eta", "c", "c_prime", "a", "a_prime", "omega_freq"});
        csv.row({cli::fmt_double(r.eta), cli::fmt_double(r.c_val), cli::fmt_double(r.c_prime),
                 cli::fmt_double(r.a_val), cli::fmt_double(r.a_prime),
                 cli::fmt_double(r.omega_freq)});
        return csv.str();
    }
    return cli::dump_json(json{{"schema", 1},
                               {"command", "resonance3"},
                               {"eta", r.eta},
                               {"c", r.c_val},
                               {"c_prime", r.c_prime},
                               {"a", r.a_val},
                               {"a_prime", r.a_prime},
                               {"omega_freq", r.omega_freq}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic-orbit atlas of the kicked torus map"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    cli::RunConfig flags;  // flag values land here
    app.add_option("--config", config_path, "JSON config file; flags override its values");
    auto* o_grid = app.add_option("--grid-points", flags.grid_points, "theta scan resolution");
    auto* o_root = app.add_option("--root-tol", flags.root_tol, "root polish tolerance");
    auto* o_match = app.add_option("--match-tol", flags.match_tol, "common-zero threshold");
    auto* o_iter = app.add_option("--max-iter", flags.max_iter, "Newton iteration cap");
    auto* o_btol = app.add_option("--boundary-tol", flags.boundary_tol, "boundary residual bound");
    auto* o_stol = app.add_option("--border-tol", flags.border_tol, "border trace bound");
    auto* o_fmt = app.add_option("--format", flags.output_format, "csv or json")
                      ->check(CLI::IsMember({"csv", "json"}));
    auto* o_out = app.add_option("--out", flags.output_path, "output file (default stdout)");

    int p = 1, j = 1, n_seeds = 64, n_iters = 200, n_max = 4, p_max = 4;
    int grid_k = 1, grid_omega = 1;
    double k = 0.0, omega = 0.0, k_max = 1.0, step = 0.0;
    double omega_min = 0.0, omega_max = 0.0, k_min = 0.0;
    std::string side = "both";

    auto* c_portrait = app.add_subcommand("portrait", "forward iterates of a seed grid");
    c_portrait->add_option("--k", k)->required();
    c_portrait->add_option("--omega", omega)->required();
    c_portrait->add_option("--n-seeds", n_seeds);
    c_portrait->add_option("--n-iters", n_iters);

    auto* c_orbits = app.add_subcommand("orbits", "periodic orbits of one tongue at (k, omega)");
    c_orbits->add_option("--p", p)->required();
    c_orbits->add_option("--j", j)->required();
    c_orbits->add_option("--k", k)->required();
    c_orbits->add_option("--omega", omega)->required();

    auto* c_edges = app.add_subcommand("edges", "first-order tongue edge lines");
    c_edges->add_option("--p", p)->required();
    c_edges->add_option("--j", j)->required();
    c_edges->add_option("--k-max", k_max)->required();
    c_edges->add_option("--step", step);

    auto* c_boundary = app.add_subcommand("boundary", "traced tongue boundary (overshoot method)");
    c_boundary->add_option("--p", p)->required();
    c_boundary->add_option("--j", j)->required();
    c_boundary->add_option("--k-max", k_max)->required();
    c_boundary->add_option("--step", step)->required();
    c_boundary->add_option("--side", side)->check(CLI::IsMember({"left", "right", "both"}));

    auto* c_border = app.add_subcommand("border", "stability border (trace = -2 locus)");
    c_border->add_option("--p", p)->required();
    c_border->add_option("--j", j)->required();
    c_border->add_option("--omega-min", omega_min)->required();
    c_border->add_option("--omega-max", omega_max)->required();
    c_border->add_option("--step", step)->required();
    c_border->add_option("--k-max", k_max);

    auto* c_cascade = app.add_subcommand("cascade", "period-doubling cascade scaling estimates");
    c_cascade->add_option("--p", p)->required();
    c_cascade->add_option("--j", j)->required();
    c_cascade->add_option("--omega", omega)->required();
    c_cascade->add_option("--n-max", n_max);

    auto* c_census = app.add_subcommand("census", "orbit inventory over a parameter rectangle");
    c_census->add_option("--k-min", k_min)->required();
    c_census->add_option("--k-max", k_max)->required();
    c_census->add_option("--omega-min", omega_min)->required();
    c_census->add_option("--omega-max", omega_max)->required();
    c_census->add_option("--grid-k", grid_k);
    c_census->add_option("--grid-omega", grid_omega);
    c_census->add_option("--p-max", p_max);

    auto* c_gauss = app.add_subcommand("gauss", "Gauss-sum magnitudes and phases, closed vs direct");
    c_gauss->add_option("--p-max", p_max)->required();

    app.add_subcommand("resonance3", "detuning geometry of the order-3 resonance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        // defaults, then config file, then explicit flags
        cli::RunConfig cfg;
        if (!config_path.empty()) cfg = cli::load_config(config_path);
        if (o_grid->count()) cfg.grid_points = flags.grid_points;
        if (o_root->count()) cfg.root_tol = flags.root_tol;
        if (o_match->count()) cfg.match_tol = flags.match_tol;
        if (o_iter->count()) cfg.max_iter = flags.max_iter;
        if (o_btol->count()) cfg.boundary_tol = flags.boundary_tol;
        if (o_stol->count()) cfg.border_tol = flags.border_tol;
        if (o_fmt->count()) cfg.output_format = flags.output_format;
        if (o_out->count()) cfg.output_path = flags.output_path;

        if (p < 1) throw ValidationFailure("--p must be >= 1");
        if (k < 0.0 || k_max < 0.0) throw ValidationFailure("kick strength must be >= 0");

        std::string payload;
        if (*c_portrait) {
            if (cfg.output_format.empty()) cfg.output_format = "csv";
            if (!o_fmt->count() && config_path.empty()) cfg.output_format = "csv";
            payload = run_portrait(cfg, k, omega, n_seeds, n_iters);
        } else if (*c_orbits) {
            payload = run_orbits(cfg, p, j, k, omega);
        } else if (*c_edges) {
            payload = run_edges(cfg, p, j, k_max, step);
        } else if (*c_boundary) {
            payload = run_boundary(cfg, p, j, side, k_max, step);
        } else if (*c_border) {
            if (!c_border->get_option("--k-max")->count()) k_max = 8.0;
            payload = run_border(cfg, p, j, omega_min, omega_max, step, k_max);
        } else if (*c_cascade) {
            payload = run_cascade(cfg, p, j, omega, n_max);
        } else if (*c_census) {
            payload = run_census(cfg, k_min, k_max, omega_min, omega_max, grid_k, grid_omega,
                                 p_max);
        } else if (*c_gauss) {
            payload = run_gauss(cfg, p_max);
        } else {
            payload = run_resonance3(cfg);
        }
        cli::write_output(cfg.output_path, payload);
        return 0;
    } catch (const ValidationFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NumericalFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
