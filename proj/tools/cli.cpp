#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "zlab/ddseries.hpp"
#include "zlab/experiments.hpp"
#include "zlab/io.hpp"

using namespace zlab;

namespace {

constexpr const char* kVersion = "zlab 0.1.0";
constexpr double kPi = 3.141592653589793238462643383279502884;

struct Common {
    std::string output;          // empty = stdout
    std::string format = "csv";  // csv | json
    int threads = 0;             // 0 = library default
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--output", c.output, "output file (default stdout)");
    sub->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", c.threads, "worker thread budget (0 = default)");
}

void apply_threads(const Common& c) {
    if (c.threads > 0) omp_set_num_threads(c.threads);
}

void emit(const Common& c, const std::vector<ExperimentRecord>& records,
          const OutputMeta& meta) {
    std::ostringstream buf;
    if (c.format == "json")
        write_json(buf, records, meta);
    else
        write_csv(buf, records, meta);
    if (c.output.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + c.output);
        f << buf.str();
    }
}

UnitTwist twist_arg(const std::string& s) {
    auto t = parse_twist(s);
    if (!t)
        throw CLI::ValidationError("twist must be one of 1, i, 1+i, i(1+i): got " + s);
    return *t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification laboratory for quadratic double Dirichlet series over Q(i)"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "key=value configuration file");
    app.require_subcommand(1);
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.failure_message(CLI::FailureMessage::help);

    Common common;
    int exit_gate = 0;  // set to 1 when a mathematical gate fails

    // ---- symbol ----
    auto* sc_symbol = app.add_subcommand("symbol", "quadratic residue symbol (a/n)");
    std::string arg_a = "1", arg_n = "1";
    sc_symbol->add_option("--a", arg_a, "numerator, literal a+bi")->required();
    sc_symbol->add_option("--n", arg_n, "odd modulus, literal a+bi")->required();
    add_common(sc_symbol, common);
    sc_symbol->callback([&] {
        apply_threads(common);
        std::cout << symbol(parse_gaussian(arg_a), parse_gaussian(arg_n)) << "\n";
    });

    // ---- lvalue ----
    auto* sc_lvalue = app.add_subcommand("lvalue", "L(1/2+it, chi_d psi) by the smoothed AFE");
    std::string arg_d = "1", arg_psi = "1";
    double arg_t = 0;
    sc_lvalue->add_option("--d", arg_d, "primary square-free modulus, literal a+bi")->required();
    sc_lvalue->add_option("--psi", arg_psi, "unit twist: 1, i, 1+i, i(1+i)");
    sc_lvalue->add_option("--t", arg_t, "height on the critical line");
    add_common(sc_lvalue, common);
    sc_lvalue->callback([&] {
        apply_threads(common);
        QuadraticCharacter chi(parse_gaussian(arg_d), twist_arg(arg_psi));
        const LValue lv = l_critical(chi, arg_t);
        std::cout << format_double(lv.value.real()) << " "
                  << format_double(lv.value.imag())
                  << " terms=" << lv.terms_used
                  << " err<=" << format_double(lv.abs_error_estimate) << "\n";
    });

    // ---- zvalue ----
    auto* sc_zvalue = app.add_subcommand("zvalue", "truncated Z(s,w;psi,psi')");
    double z_sre = 2, z_sim = 0, z_wre = 2, z_wim = 0;
    std::string z_psi = "1", z_psi2 = "1", z_method = "via-l";
    long long z_M = 200, z_N = 100000;
    sc_zvalue->add_option("--s-re", z_sre, "Re s");
    sc_zvalue->add_option("--s-im", z_sim, "Im s");
    sc_zvalue->add_option("--w-re", z_wre, "Re w");
    sc_zvalue->add_option("--w-im", z_wim, "Im w");
    sc_zvalue->add_option("--psi", z_psi, "inner twist");
    sc_zvalue->add_option("--psi2", z_psi2, "outer twist");
    sc_zvalue->add_option("--method", z_method, "direct or via-l")
        ->check(CLI::IsMember({"direct", "via-l"}));
    sc_zvalue->add_option("--M", z_M, "outer truncation (norm)");
    sc_zvalue->add_option("--N", z_N, "inner truncation for --method direct");
    add_common(sc_zvalue, common);
    sc_zvalue->callback([&] {
        apply_threads(common);
        const cplx s(z_sre, z_sim), w(z_wre, z_wim);
        const cplx z = z_method == "direct"
                           ? z_direct(s, w, twist_arg(z_psi), twist_arg(z_psi2), z_M, z_N)
                           : z_via_l(s, w, twist_arg(z_psi), twist_arg(z_psi2), z_M);
        std::cout << format_double(z.real()) << " " << format_double(z.imag()) << "\n";
    });

    // ---- dsum ----
    auto* sc_dsum = app.add_subcommand("dsum", "windowed sum D(t,u,P;W)");
    double d_t = 0, d_u = 0, d_P = 16;
    std::string d_psi = "1", d_psi2 = "1";
    sc_dsum->add_option("--t", d_t, "Im of the inner critical point");
    sc_dsum->add_option("--u", d_u, "Im of the outer critical point");
    sc_dsum->add_option("--P", d_P, "window scale, support [P,2P]");
    sc_dsum->add_option("--psi", d_psi, "inner twist");
    sc_dsum->add_option("--psi2", d_psi2, "outer twist");
    add_common(sc_dsum, common);
    sc_dsum->callback([&] {
        apply_threads(common);
        const cplx v = d_sum(d_t, d_u, d_P, WeightSpec::bump(), twist_arg(d_psi),
                             twist_arg(d_psi2));
        std::cout << format_double(v.real()) << " " << format_double(v.imag()) << "\n";
    });

    // ---- fe-check ----
    auto* sc_fe = app.add_subcommand("fe-check", "functional equation residual");
    double fe_sre = 0.75, fe_sim = 0, fe_wre = 4, fe_wim = 0, fe_gate = 1e-5;
    std::string fe_psi = "i", fe_psi2 = "1";
    long long fe_M = 200;
    sc_fe->add_option("--s-re", fe_sre, "Re s");
    sc_fe->add_option("--s-im", fe_sim, "Im s");
    sc_fe->add_option("--w-re", fe_wre, "Re w");
    sc_fe->add_option("--w-im", fe_wim, "Im w");
    sc_fe->add_option("--psi", fe_psi, "inner twist (1 selects the psi_1 equation)");
    sc_fe->add_option("--psi2", fe_psi2, "outer twist");
    sc_fe->add_option("--M", fe_M, "truncation (norm)");
    sc_fe->add_option("--gate", fe_gate, "pass threshold on the residual");
    add_common(sc_fe, common);
    sc_fe->callback([&] {
        apply_threads(common);
        const cplx s(fe_sre, fe_sim), w(fe_wre, fe_wim);
        const UnitTwist psi = twist_arg(fe_psi);
        const double residual =
            psi == UnitTwist::one
                ? check_fe_psi1(s, w, twist_arg(fe_psi2), fe_M)
                : check_fe_nontrivial(s, w, psi, twist_arg(fe_psi2), fe_M);
        std::cout << "residual=" << format_double(residual)
                  << " gate=" << format_double(fe_gate)
                  << (residual < fe_gate ? " PASS" : " FAIL") << "\n";
        if (!(residual < fe_gate)) exit_gate = 1;
    });

    // ---- residue-check ----
    auto* sc_res = app.add_subcommand("residue-check", "residue of Z at s=1 vs pi zeta_k2(2w)/8");
    double res_w = 3, res_gate = 0.02;
    std::string res_psi2 = "1";
    long long res_M = 200;
    sc_res->add_option("--w", res_w, "real w");
    sc_res->add_option("--psi2", res_psi2, "outer twist");
    sc_res->add_option("--M", res_M, "truncation (norm)");
    sc_res->add_option("--gate", res_gate, "pass threshold on the relative error");
    add_common(sc_res, common);
    sc_res->callback([&] {
        apply_threads(common);
        const cplx got = residue_s1(cplx(res_w, 0), twist_arg(res_psi2), res_M);
        const cplx target = kPi / 8.0 * zeta_k2(cplx(2 * res_w, 0));
        const double rel = std::abs(got - target) / std::abs(target);
        std::cout << "residue=" << format_double(got.real())
                  << " target=" << format_double(target.real())
                  << " rel_error=" << format_double(rel)
                  << (rel < res_gate ? " PASS" : " FAIL") << "\n";
        if (!(rel < res_gate)) exit_gate = 1;
    });

    // ---- moment-scan ----
    auto* sc_mom = app.add_subcommand("moment-scan", "dyadic moment sums of |L(1/2+it, chi_m)|");
    long long mom_xmax = 4096;
    double mom_t = 0;
    sc_mom->add_option("--xmax", mom_xmax, "largest modulus norm");
    sc_mom->add_option("--t", mom_t, "height on the critical line");
    add_common(sc_mom, common);
    sc_mom->callback([&] {
        apply_threads(common);
        const auto res = moment_scan(mom_xmax, mom_t);
        OutputMeta meta{kVersion,
                        {{"subcommand", "moment-scan"},
                         {"xmax", std::to_string(mom_xmax)},
                         {"t", format_double(mom_t)},
                         {"exponent", format_double(res.exponent)}}};
        emit(common, res.records, meta);
    });

    // ---- sieve-test ----
    auto* sc_sieve = app.add_subcommand("sieve-test", "normalized quadratic large-sieve ratios");
    long long sv_M = 1024, sv_N = 1024;
    int sv_trials = 100;
    uint64_t sv_seed = 1;
    double sv_gate = 50;
    sc_sieve->add_option("--M", sv_M, "modulus norm cut");
    sc_sieve->add_option("--N", sv_N, "coefficient support norm cut");
    sc_sieve->add_option("--trials", sv_trials, "number of Rademacher draws");
    sc_sieve->add_option("--seed", sv_seed, "RNG seed");
    sc_sieve->add_option("--gate", sv_gate, "pass threshold on the max ratio");
    add_common(sc_sieve, common);
    sc_sieve->callback([&] {
        apply_threads(common);
        const auto res = sieve_test(sv_M, sv_N, sv_trials, sv_seed);
        OutputMeta meta{kVersion,
                        {{"subcommand", "sieve-test"},
                         {"M", std::to_string(sv_M)},
                         {"N", std::to_string(sv_N)},
                         {"trials", std::to_string(sv_trials)},
                         {"seed", std::to_string(sv_seed)},
                         {"max_ratio", format_double(res.max_ratio)}}};
        emit(common, res.records, meta);
        if (!(res.max_ratio <= sv_gate)) exit_gate = 1;
    });

    // ---- d-bound ----
    auto* sc_db = app.add_subcommand("d-bound", "|D| against the two-branch bound over a grid");
    std::vector<double> db_t = {0, 2, 4}, db_u = {8, 16, 32},
                        db_P = {16, 32, 64, 128, 256, 512, 1024};
    double db_gate = 100;
    sc_db->add_option("--t", db_t, "t grid");
    sc_db->add_option("--u", db_u, "u grid");
    sc_db->add_option("--P", db_P, "P grid");
    sc_db->add_option("--gate", db_gate, "pass threshold on the fitted constant");
    add_common(sc_db, common);
    sc_db->callback([&] {
        apply_threads(common);
        const auto res = d_bound_experiment(db_t, db_u, db_P);
        OutputMeta meta{kVersion,
                        {{"subcommand", "d-bound"},
                         {"fitted_constant", format_double(res.fitted_constant)},
                         {"crossover_ok", res.crossover_ok ? "true" : "false"},
                         {"max_conjugation_residual",
                          format_double(res.max_conjugation_residual)}}};
        emit(common, res.records, meta);
        if (!(res.fitted_constant <= db_gate) || !res.crossover_ok ||
            !(res.max_conjugation_residual < 1e-10))
            exit_gate = 1;
    });

    // ---- majorant ----
    auto* sc_maj = app.add_subcommand("majorant", "|D| against the contour-quadrature majorant");
    double mj_t = 0, mj_u = 1, mj_P = 8, mj_gate = 20;
    sc_maj->add_option("--t", mj_t, "t");
    sc_maj->add_option("--u", mj_u, "u");
    sc_maj->add_option("--P", mj_P, "window scale");
    sc_maj->add_option("--gate", mj_gate, "pass threshold on the ratio");
    add_common(sc_maj, common);
    sc_maj->callback([&] {
        apply_threads(common);
        const auto res = majorant_compare(mj_t, mj_u, mj_P);
        std::cout << "D=" << format_double(std::abs(res.d_value))
                  << " R=" << format_double(res.majorant)
                  << " ratio=" << format_double(res.ratio)
                  << (res.ratio <= mj_gate ? " PASS" : " FAIL") << "\n";
        if (!(res.ratio <= mj_gate)) exit_gate = 1;
    });

    // ---- exponent-fit ----
    auto* sc_fit = app.add_subcommand("exponent-fit", "log-log least squares");
    std::vector<double> fit_x, fit_y;
    sc_fit->add_option("--x", fit_x, "x values")->required();
    sc_fit->add_option("--y", fit_y, "y values")->required();
    add_common(sc_fit, common);
    sc_fit->callback([&] {
        apply_threads(common);
        if (fit_x.size() != fit_y.size())
            throw CLI::ValidationError("--x and --y need the same length");
        std::vector<std::pair<double, double>> pts;
        for (size_t i = 0; i < fit_x.size(); ++i) pts.emplace_back(fit_x[i], fit_y[i]);
        const auto [slope, intercept] = exponent_fit(pts);
        std::cout << "slope=" << format_double(slope)
                  << " intercept=" << format_double(intercept) << "\n";
    });

    if (argc <= 1) {
        std::cerr << app.help();
        return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    std::cerr << "wall_time_s=" << format_double(elapsed) << "\n";
    return exit_gate;
}
