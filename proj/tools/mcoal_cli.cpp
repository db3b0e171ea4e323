// mcoal: reproducible experiment runner for distinguished coalescents and
// their dual measure-valued processes. Every simulation takes an explicit
// seed; identical invocations produce byte-identical output.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "mcoal/bridge.hpp"
#include "mcoal/cdi.hpp"
#include "mcoal/coalescent.hpp"
#include "mcoal/gfvi.hpp"
#include "mcoal/json_io.hpp"
#include "mcoal/quadrature.hpp"
#include "mcoal/stats.hpp"

using json = nlohmann::ordered_json;
using namespace mcoal;

namespace {

constexpr int kExitNumericalCap = 3;

struct CommonOpts {
    std::string lambda0_spec, lambda1_spec, nu0_spec, nu1_spec;
    std::string out_path;
    std::string format = "json";
};

void add_measure_flags(CLI::App* cmd, CommonOpts& opts, bool with_nu) {
    cmd->add_option("--lambda0", opts.lambda0_spec, "Lambda_0 measure spec");
    cmd->add_option("--lambda1", opts.lambda1_spec, "Lambda_1 measure spec");
    if (with_nu) {
        cmd->add_option("--nu0", opts.nu0_spec, "nu_0 measure spec (excludes --lambda0)")
            ->excludes("--lambda0");
        cmd->add_option("--nu1", opts.nu1_spec, "nu_1 measure spec (excludes --lambda1)")
            ->excludes("--lambda1");
    }
    cmd->add_option("--out", opts.out_path, "output file (default stdout)");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

MParams parse_mparams(const CommonOpts& opts) {
    MParams m;
    if (!opts.lambda0_spec.empty()) m.lambda0 = BoundedMeasure::parse(opts.lambda0_spec);
    if (!opts.lambda1_spec.empty()) m.lambda1 = BoundedMeasure::parse(opts.lambda1_spec);
    return m;
}

// nu measures either given directly or derived from the Lambda specs.
std::pair<BoundedMeasure, BoundedMeasure> parse_nus(const CommonOpts& opts) {
    BoundedMeasure nu0 = !opts.nu0_spec.empty() ? BoundedMeasure::parse(opts.nu0_spec)
                         : !opts.lambda0_spec.empty()
                             ? nu_measure(BoundedMeasure::parse(opts.lambda0_spec), 1)
                             : BoundedMeasure::zero();
    BoundedMeasure nu1 = !opts.nu1_spec.empty() ? BoundedMeasure::parse(opts.nu1_spec)
                         : !opts.lambda1_spec.empty()
                             ? nu_measure(BoundedMeasure::parse(opts.lambda1_spec), 2)
                             : BoundedMeasure::zero();
    return {nu0, nu1};
}

json resolved_config(const CommonOpts& opts, const json& extra) {
    json cfg;
    if (!opts.lambda0_spec.empty()) cfg["lambda0"] = opts.lambda0_spec;
    if (!opts.lambda1_spec.empty()) cfg["lambda1"] = opts.lambda1_spec;
    if (!opts.nu0_spec.empty()) cfg["nu0"] = opts.nu0_spec;
    if (!opts.nu1_spec.empty()) cfg["nu1"] = opts.nu1_spec;
    for (const auto& [k, v] : extra.items()) cfg[k] = v;
    cfg["format"] = opts.format;
    return cfg;
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + opts.out_path);
        out << text;
    }
}

void emit_json(const CommonOpts& opts, const json& j) { emit(opts, j.dump(2) + "\n"); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mcoal: distinguished coalescent / GFVI experiment runner"};
    app.require_subcommand(1);

    // ---- rates ----
    CommonOpts rates_opts;
    int rates_b = 5;
    auto* rates = app.add_subcommand("rates", "tables of lambda_{b,k} and r_{b,k}");
    add_measure_flags(rates, rates_opts, false);
    rates->add_option("--b", rates_b, "block count")->check(CLI::Range(1, 500));

    // ---- simulate ----
    CommonOpts sim_opts;
    int sim_n = 10, sim_replicas = 1;
    double sim_t = -1.0;
    std::uint64_t sim_seed = 0;
    bool sim_seed_set = false;
    std::string sim_construction = "gillespie";
    auto* sim = app.add_subcommand("simulate", "coalescent trajectories");
    add_measure_flags(sim, sim_opts, false);
    sim->add_option("--n", sim_n, "ground size {0,...,n}")->check(CLI::Range(1, 10000));
    sim->add_option("--t", sim_t, "horizon (omit to run to absorption)");
    sim->add_option("--replicas", sim_replicas)->check(CLI::Range(1, 10000000));
    sim->add_option("--seed", sim_seed)->required()->each([&](const std::string&) {
        sim_seed_set = true;
    });
    sim->add_option("--construction", sim_construction, "gillespie | simple")
        ->check(CLI::IsMember({"gillespie", "simple"}));

    // ---- cdi-check ----
    CommonOpts cdi_opts;
    CdiOptions cdi_params;
    auto* cdi = app.add_subcommand("cdi-check", "coming-down-from-infinity verdict");
    add_measure_flags(cdi, cdi_opts, false);
    cdi->add_option("--depth", cdi_params.series_depth, "series depth N");
    cdi->add_option("--qmax", cdi_params.integral_cap, "psi-integral cap Q");
    cdi->add_option("--windows", cdi_params.windows);

    // ---- fixation ----
    CommonOpts fix_opts;
    int fix_n = 50, fix_replicas = 10000, fix_depth = 10000;
    std::uint64_t fix_seed = 0;
    auto* fix = app.add_subcommand("fixation", "MC fixation stats and the series bound");
    add_measure_flags(fix, fix_opts, false);
    fix->add_option("--n", fix_n)->check(CLI::Range(1, 10000));
    fix->add_option("--replicas", fix_replicas)->check(CLI::Range(2, 10000000));
    fix->add_option("--depth", fix_depth, "bound series depth");
    fix->add_option("--seed", fix_seed)->required();

    // ---- gfvi ----
    CommonOpts gfvi_opts;
    double gfvi_t = 1.0;
    std::uint64_t gfvi_seed = 0;
    auto* gfvi = app.add_subcommand("gfvi", "forward GFVI trajectory");
    add_measure_flags(gfvi, gfvi_opts, true);
    gfvi->add_option("--t", gfvi_t, "horizon");
    gfvi->add_option("--seed", gfvi_seed)->required();

    // ---- duality ----
    CommonOpts dual_opts;
    int dual_p = 1, dual_replicas = 10000;
    double dual_t = 1.0;
    std::uint64_t dual_seed = 0;
    auto* dual = app.add_subcommand("duality", "Monte-Carlo duality report (f = product)");
    add_measure_flags(dual, dual_opts, false);
    dual->add_option("--p", dual_p)->check(CLI::Range(1, 4));
    dual->add_option("--t", dual_t, "horizon");
    dual->add_option("--replicas", dual_replicas)->check(CLI::Range(2, 10000000));
    dual->add_option("--seed", dual_seed)->required();

    // ---- bridge-test ----
    CommonOpts br_opts;
    double br_y1 = 0.0, br_x1 = 0.5, br_v1 = -1.0, br_y2 = 0.5, br_x2 = 0.0, br_v2 = -1.0;
    int br_n = 2, br_replicas = 100000;
    std::uint64_t br_seed = 0;
    auto* br = app.add_subcommand("bridge-test", "composition/coagulation distance");
    add_measure_flags(br, br_opts, false);
    br->add_option("--y1", br_y1);
    br->add_option("--x1", br_x1);
    br->add_option("--v1", br_v1, "first-bridge jump location (default: sampled)");
    br->add_option("--y2", br_y2);
    br->add_option("--x2", br_x2);
    br->add_option("--v2", br_v2, "second-bridge jump location (default: sampled)");
    br->add_option("--n", br_n)->check(CLI::Range(0, 5));
    br->add_option("--replicas", br_replicas)->check(CLI::Range(1, 10000000));
    br->add_option("--seed", br_seed)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (rates->parsed()) {
            MParams m = parse_mparams(rates_opts);
            json out;
            out["config"] = resolved_config(rates_opts, {{"b", rates_b}});
            if (rates_opts.format == "csv") {
                std::ostringstream csv;
                csv << "kind,b,k,rate\n";
                for (int k = 2; k <= rates_b; ++k)
                    csv << "lambda," << rates_b << "," << k << ","
                        << json(lambda_rate(rates_b, k, m.lambda1)).dump() << "\n";
                for (int k = 1; k <= rates_b; ++k)
                    csv << "r," << rates_b << "," << k << ","
                        << json(r_rate(rates_b, k, m.lambda0)).dump() << "\n";
                emit(rates_opts, csv.str());
            } else {
                out["lambda"] = json::object();
                for (int k = 2; k <= rates_b; ++k)
                    out["lambda"][std::to_string(k)] = lambda_rate(rates_b, k, m.lambda1);
                out["r"] = json::object();
                for (int k = 1; k <= rates_b; ++k)
                    out["r"][std::to_string(k)] = r_rate(rates_b, k, m.lambda0);
                emit_json(rates_opts, out);
            }
        } else if (sim->parsed()) {
            (void)sim_seed_set;
            Horizon horizon = sim_t >= 0.0 ? Horizon(sim_t) : std::nullopt;
            MParams m = parse_mparams(sim_opts);
            json out;
            out["config"] = resolved_config(
                sim_opts, {{"n", sim_n},
                           {"t", sim_t},
                           {"replicas", sim_replicas},
                           {"seed", sim_seed},
                           {"construction", sim_construction}});
            std::ostringstream csv;
            if (sim_opts.format == "csv") csv << "replica,t,count\n";
            out["trajectories"] = json::array();
            for (int r = 0; r < sim_replicas; ++r) {
                RandomSource rng(sim_seed, r);
                CoalescentTrajectory traj =
                    sim_construction == "simple"
                        ? simulate_simple_poissonian(m, sim_n, horizon, rng)
                        : simulate_m_coalescent(
                              m, sim_n, DistinguishedPartition::singletons(sim_n), horizon, rng);
                if (sim_opts.format == "csv") {
                    for (const auto& [t, count] : block_count_path(traj))
                        csv << r << "," << json(t).dump() << "," << count << "\n";
                } else {
                    out["trajectories"].push_back(trajectory_to_json(traj, sim_seed));
                }
            }
            if (sim_opts.format == "csv")
                emit(sim_opts, csv.str());
            else
                emit_json(sim_opts, out);
        } else if (cdi->parsed()) {
            MParams m = parse_mparams(cdi_opts);
            json out;
            out["config"] = resolved_config(cdi_opts, {{"depth", cdi_params.series_depth},
                                                       {"qmax", cdi_params.integral_cap},
                                                       {"windows", cdi_params.windows}});
            json verdict = verdict_to_json(classify_cdi(m, cdi_params));
            for (const auto& [k, v] : verdict.items()) out[k] = v;
            emit_json(cdi_opts, out);
        } else if (fix->parsed()) {
            MParams m = parse_mparams(fix_opts);
            FixationBound bound = fixation_bound(m, fix_depth);
            std::vector<double> zetas;
            zetas.reserve(fix_replicas);
            DistinguishedPartition start = DistinguishedPartition::singletons(fix_n);
            for (int r = 0; r < fix_replicas; ++r) {
                RandomSource rng(fix_seed, r);
                auto traj = simulate_m_coalescent(m, fix_n, start, std::nullopt, rng);
                zetas.push_back(*fixation_time(traj));
            }
            MeanSe stats = mean_se(zetas);
            json out;
            out["config"] = resolved_config(fix_opts, {{"n", fix_n},
                                                       {"replicas", fix_replicas},
                                                       {"depth", fix_depth},
                                                       {"seed", fix_seed}});
            out["bound"] = {{"partial_sum", bound.partial_sum},
                            {"tail_estimate", bound.tail_estimate},
                            {"tail_controlled", bound.tail_controlled},
                            {"value", bound.bound()}};
            out["mc"] = {{"mean", stats.mean}, {"se", stats.se}, {"replicas", stats.n}};
            emit_json(fix_opts, out);
        } else if (gfvi->parsed()) {
            auto [nu0, nu1] = parse_nus(gfvi_opts);
            RandomSource rng(gfvi_seed, 0);
            GfviTrajectory traj =
                simulate_gfvi(nu0, nu1, AtomicProbabilityMeasure::uniform(), gfvi_t, rng);
            json out;
            out["config"] = resolved_config(gfvi_opts, {{"t", gfvi_t}, {"seed", gfvi_seed}});
            json traj_json = gfvi_to_json(traj, gfvi_seed);
            for (const auto& [k, v] : traj_json.items()) out[k] = v;
            emit_json(gfvi_opts, out);
        } else if (dual->parsed()) {
            MParams m = parse_mparams(dual_opts);
            auto product = [](const std::vector<double>& xs) {
                double p = 1.0;
                for (double x : xs) p *= x;
                return p;
            };
            DualityReport rep = duality_check(m, dual_p, product, dual_t, dual_replicas, dual_seed);
            json out;
            out["config"] = resolved_config(dual_opts, {{"p", dual_p},
                                                        {"t", dual_t},
                                                        {"replicas", dual_replicas},
                                                        {"seed", dual_seed},
                                                        {"f", "product"}});
            out["lhs"] = {{"mean", rep.lhs_mean}, {"se", rep.lhs_se}};
            out["rhs"] = {{"mean", rep.rhs_mean}, {"se", rep.rhs_se}};
            out["z_score"] = rep.z_score;
            emit_json(dual_opts, out);
        } else if (br->parsed()) {
            RandomSource rng(br_seed, 0);
            DistinguishedBridge b1 =
                validate_bridge(br_y1, br_x1, br_v1 >= 0.0 ? br_v1 : rng.uniform());
            DistinguishedBridge b2 =
                validate_bridge(br_y2, br_x2, br_v2 >= 0.0 ? br_v2 : rng.uniform());
            ComposeCheckResult res = compose_check(b1, b2, br_n, br_replicas, rng);
            json out;
            out["config"] = resolved_config(
                br_opts, {{"y1", br_y1}, {"x1", br_x1}, {"v1", b1.v},
                          {"y2", br_y2}, {"x2", br_x2}, {"v2", b2.v},
                          {"n", br_n}, {"replicas", br_replicas}, {"seed", br_seed}});
            out["tv_distance"] = res.tv_distance;
            out["law_composite"] = json::object();
            for (const auto& [pi, w] : res.law_composite)
                out["law_composite"][pi.to_string()] = w;
            out["law_coag"] = json::object();
            for (const auto& [pi, w] : res.law_coag)
                out["law_coag"][pi.to_string()] = w;
            emit_json(br_opts, out);
        }
    } catch (const QuadratureCapExceeded& e) {
        std::cerr << "numerical cap exceeded: " << e.what() << "\n";
        return kExitNumericalCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
