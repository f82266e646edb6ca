// SPDX-License-Identifier: Apache-2.0
//
// gvar: generalized-variation functionals and Fourier partial sums of
// sampled multivariate functions.
//
//   gvar sample   --source NAME --size 9,9 --out grid.json
//   gvar varcalc  --grid grid.json --functional sharp --lambda harmonic
//   gvar fourier coeffs        --source NAME --N 8,8 --out coeffs.json
//   gvar fourier partial-sum   --coeffs coeffs.json --N 4,4 --point 0,0
//   gvar fourier regular-point --source NAME --point 0,0
//   gvar study embedding --config cfg.json --seed 1 --out-dir results
//
// Exit code 0 iff every asserted property held.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gvar/divergence_witness.hpp"
#include "gvar/fourier.hpp"
#include "gvar/grid_function.hpp"
#include "gvar/lambda_seq.hpp"
#include "gvar/sources.hpp"
#include "gvar/studies.hpp"
#include "gvar/variation.hpp"

namespace {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t comma = s.find(',', pos);
        out.push_back(std::stoi(s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        pos = comma == std::string::npos ? s.size() : comma + 1;
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t comma = s.find(',', pos);
        out.push_back(std::stod(s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        pos = comma == std::string::npos ? s.size() : comma + 1;
    }
    return out;
}

json bracket_json(const gvar::VariationBracket& b) {
    json j;
    j["lower"] = b.lower;
    j["upper"] = b.upper_finite() ? json(b.upper) : json(nullptr);  // null = uncertified
    j["exact"] = b.exact;
    return j;
}

json family_json(const gvar::IntervalFamily& fam) {
    json j;
    j["axis"] = fam.axis + 1;  // axes are 1-based in the external formats
    j["intervals"] = fam.intervals;
    return j;
}

json axis_witness_json(const gvar::AxisVariation& av) {
    json j = family_json(av.family);
    if (!av.term_slices.empty()) j["term_slices"] = av.term_slices;
    if (!av.fixed_point.empty()) j["fixed_point"] = av.fixed_point;
    return j;
}

void emit(const json& j, const std::string& out_file) {
    if (out_file.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_file);
        out << j.dump(2) << "\n";
    }
}

gvar::GridFunction load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open grid file '" + path + "'");
    json j;
    in >> j;
    return gvar::grid_function_from_json(j);
}

int run_varcalc(const std::string& grid_path, const std::string& functional,
                const std::string& lambda_spec, const std::string& alpha_spec, int n_terms,
                const std::string& out_file) {
    const gvar::GridFunction f = load_grid(grid_path);
    const gvar::LambdaSeq lambda = gvar::LambdaSeq::parse(lambda_spec);
    const gvar::VariationParams params;

    json j;
    j["functional"] = functional;
    j["lambda"] = lambda.spec_string();

    if (functional == "sharp" || functional == "partial") {
        const gvar::PerAxisVariation v = functional == "sharp"
                                             ? gvar::sharp_variation(f, lambda, params)
                                             : gvar::partial_variation(f, lambda, params);
        j.update(bracket_json(v.total));
        json axes = json::array();
        for (const auto& av : v.axes) {
            json a = bracket_json(av.bracket);
            a["witness"] = axis_witness_json(av);
            axes.push_back(a);
        }
        j["witness"] = axes;
    } else if (functional == "total") {
        const gvar::TotalVariation v = gvar::total_variation(f, lambda, params);
        j.update(bracket_json(v.total));
        json terms = json::array();
        for (const auto& [alpha, b] : v.terms) {
            json t = bracket_json(b);
            json ax = json::array();
            for (int a : alpha.axes) ax.push_back(a + 1);
            t["alpha"] = ax;
            terms.push_back(t);
        }
        j["witness"] = terms;
    } else if (functional == "rect") {
        const gvar::RectangleVariation v = gvar::rectangle_variation(f, lambda, params);
        j.update(bracket_json(v.bracket));
        j["witness"] = {{"rects", v.rects}};
    } else if (functional == "index") {
        if (alpha_spec.empty()) throw std::invalid_argument("varcalc: --alpha required for index");
        gvar::IndexSet alpha;
        for (int a : parse_int_list(alpha_spec)) alpha.axes.push_back(a - 1);
        const gvar::IndexSetVariation v = gvar::index_set_variation(f, alpha, lambda, params);
        j.update(bracket_json(v.bracket));
        json fams = json::array();
        for (const auto& fam : v.families) fams.push_back(family_json(fam));
        j["witness"] = {{"families", fams}, {"fixed_point", v.fixed_point}};
    } else if (functional == "vsharp") {
        if (alpha_spec.empty()) throw std::invalid_argument("varcalc: --alpha selects the axis for vsharp");
        const int axis = parse_int_list(alpha_spec).at(0) - 1;
        const double v = gvar::sharp_sum(f, axis, n_terms);
        j["lower"] = v;
        j["upper"] = v;
        j["exact"] = true;
        j["n"] = n_terms;
    } else {
        throw std::invalid_argument("varcalc: unknown functional '" + functional + "'");
    }

    emit(j, out_file);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized-variation functionals and multiple Fourier partial sums"};
    app.require_subcommand(1);

    // --- sample ---
    auto* sample_cmd = app.add_subcommand("sample", "sample a built-in source onto a grid JSON");
    std::string sample_source = "smooth";
    std::string sample_size = "9,9";
    std::string sample_out;
    sample_cmd->add_option("--source", sample_source, "source name");
    sample_cmd->add_option("--size", sample_size, "points per axis, comma separated");
    sample_cmd->add_option("--out", sample_out, "output file (stdout if omitted)");

    // --- varcalc ---
    auto* var_cmd = app.add_subcommand("varcalc", "compute a variation functional of a grid JSON");
    std::string var_grid;
    std::string var_functional = "sharp";
    std::string var_lambda = "harmonic";
    std::string var_alpha;
    std::string var_out;
    int var_n = 1;
    var_cmd->add_option("--grid", var_grid, "grid JSON file")->required();
    var_cmd->add_option("--functional", var_functional, "sharp|partial|total|rect|index|vsharp");
    var_cmd->add_option("--lambda", var_lambda,
                        "harmonic | paper:d=2 | xi:d=2,xi=loglog | constant[:c=1] | table:path.json");
    var_cmd->add_option("--alpha", var_alpha, "1-based axes, e.g. 1,2 (index/vsharp)");
    var_cmd->add_option("--n", var_n, "term count for vsharp");
    var_cmd->add_option("--out", var_out, "output file (stdout if omitted)");

    // --- fourier ---
    auto* fourier_cmd = app.add_subcommand("fourier", "Fourier coefficients and partial sums");
    fourier_cmd->require_subcommand(1);

    auto* coeffs_cmd = fourier_cmd->add_subcommand("coeffs", "coefficients of a built-in source");
    std::string co_source = "smooth";
    std::string co_N = "8,8";
    int co_oversample = 8;
    std::string co_out;
    coeffs_cmd->add_option("--source", co_source, "source name");
    coeffs_cmd->add_option("--N", co_N, "per-axis bound, comma separated");
    coeffs_cmd->add_option("--oversample", co_oversample, "samples per axis = oversample*(2N+1)");
    coeffs_cmd->add_option("--out", co_out, "output file (stdout if omitted)");

    auto* psum_cmd = fourier_cmd->add_subcommand("partial-sum", "rectangular partial sum");
    std::string ps_coeffs;
    std::string ps_N = "4,4";
    std::string ps_point = "0,0";
    psum_cmd->add_option("--coeffs", ps_coeffs, "coefficient JSON file")->required();
    psum_cmd->add_option("--N", ps_N, "per-axis partial-sum bound");
    psum_cmd->add_option("--point", ps_point, "evaluation point");

    auto* reg_cmd = fourier_cmd->add_subcommand("regular-point", "directional limits and f*");
    std::string rp_source = "quadrant";
    std::string rp_point = "0,0";
    reg_cmd->add_option("--source", rp_source, "source name");
    reg_cmd->add_option("--point", rp_point, "point");

    // --- study ---
    auto* study_cmd = app.add_subcommand("study", "run a named study");
    std::string study_name;
    std::string study_config;
    std::string study_out_dir;
    std::optional<std::uint64_t> study_seed;
    std::optional<int> study_instances;
    std::string study_sizes;
    std::string study_sweep;
    bool study_svg = false;
    study_cmd->add_option("name", study_name, "embedding|convergence|divergence|vn|local|inclusion")
        ->required();
    study_cmd->add_option("--config", study_config, "JSON config file (flags override fields)");
    study_cmd->add_option("--out-dir", study_out_dir, "output directory");
    study_cmd->add_option("--seed", study_seed, "base seed (mandatory for random corpora)");
    study_cmd->add_option("--instances", study_instances, "instance count");
    study_cmd->add_option("--sizes", study_sizes, "grid sizes, comma separated");
    study_cmd->add_option("--sweep", study_sweep, "N sweep, comma separated");
    study_cmd->add_flag("--svg", study_svg, "emit SVG charts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample_cmd) {
            const gvar::FunctionSource src = gvar::parse_source(sample_source);
            const std::vector<int> sizes = parse_int_list(sample_size);
            if (static_cast<int>(sizes.size()) != src.dim) {
                throw std::invalid_argument("sample: --size rank must match the source dimension");
            }
            std::vector<std::vector<double>> axes(sizes.size());
            for (std::size_t k = 0; k < sizes.size(); ++k) {
                axes[k].resize(static_cast<std::size_t>(sizes[k]));
                for (int i = 0; i < sizes[k]; ++i) {
                    axes[k][static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / sizes[k];
                }
            }
            emit(gvar::to_json(gvar::sample(src, std::move(axes))), sample_out);
            return 0;
        }
        if (*var_cmd) {
            return run_varcalc(var_grid, var_functional, var_lambda, var_alpha, var_n, var_out);
        }
        if (*fourier_cmd) {
            if (*coeffs_cmd) {
                const gvar::FunctionSource src = gvar::parse_source(co_source);
                const std::vector<int> N = parse_int_list(co_N);
                emit(gvar::to_json(gvar::fourier_coefficients(src, N, co_oversample)), co_out);
                return 0;
            }
            if (*psum_cmd) {
                std::ifstream in(ps_coeffs);
                if (!in) throw std::invalid_argument("cannot open coefficients '" + ps_coeffs + "'");
                json cj;
                in >> cj;
                const gvar::CoeffTensor c = gvar::coeff_tensor_from_json(cj);
                const std::vector<int> N = parse_int_list(ps_N);
                const std::vector<double> x = parse_double_list(ps_point);
                json j;
                j["N"] = N;
                j["point"] = x;
                j["value"] = gvar::rectangular_partial_sum(c, N, x);
                emit(j, "");
                return 0;
            }
            if (*reg_cmd) {
                const gvar::FunctionSource src = gvar::parse_source(rp_source);
                const std::vector<double> x = parse_double_list(rp_point);
                const gvar::RegularPointReport rp = gvar::regular_point(src, x);
                json j;
                j["point"] = rp.point;
                j["f_star"] = rp.f_star;
                j["regular"] = rp.regular;
                json lims = json::array();
                for (const auto& lim : rp.limits) {
                    lims.push_back({{"value", lim.value}, {"converged", lim.converged}});
                }
                j["limits"] = lims;
                emit(j, "");
                return 0;
            }
        }
        if (*study_cmd) {
            gvar::StudyConfig cfg;
            if (!study_config.empty()) cfg = gvar::StudyConfig::from_file(study_config);
            cfg.study = study_name;
            if (!study_out_dir.empty()) cfg.out_dir = study_out_dir;
            if (study_seed) cfg.seed = *study_seed;
            if (study_instances) cfg.instances = *study_instances;
            if (!study_sizes.empty()) cfg.grid_sizes = parse_int_list(study_sizes);
            if (!study_sweep.empty()) cfg.sweep = parse_int_list(study_sweep);
            if (study_svg) cfg.svg = true;
            const gvar::StudyReport report = gvar::run_study(cfg);
            std::cout << report.summary.dump(2) << "\n";
            if (!report.passed) {
                for (const auto& fail : report.failures) std::cerr << "[FAIL] " << fail << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
