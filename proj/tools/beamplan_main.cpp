// beamplan: plan and validate beam-count choices for a beamformed Poisson
// cellular downlink.
//
//   beamplan preset list                     catalogue of bundled deployments
//   beamplan sweep ...                       metric curves as CSV
//   beamplan optimize ...                    argmax over beam exponents, JSON
//   beamplan reproduce <figure-id>           bundled study recipes
//   beamplan simulate ...                    Monte Carlo estimates, raw dumps
//   beamplan validate <check>                analytic vs simulation reports
//
// Exit codes: 0 ok, 1 usage error, 2 numeric failure, 3 validation failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "beamplan/beamplan.hpp"

using namespace beamplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitValidation = 3;

struct ScenarioOptions {
    std::string preset_name = "FR2-75";
    std::string scenario_file;
    std::optional<double> isd_m;
    std::optional<double> speed_kmh;
    std::optional<double> tau_ms;
    std::optional<double> tb_ms;
    std::optional<double> tc_ms;
    std::optional<std::string> mode;
    double rel_tol = 1e-6;
    double abs_tol = 1e-10;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset_name, "base deployment preset")->capture_default_str();
        cmd->add_option("--scenario", scenario_file,
                        "scenario JSON file (overrides the preset; flags override the file)");
        cmd->add_option("--isd-m", isd_m, "inter-site distance in meters");
        cmd->add_option("--speed-kmh", speed_kmh, "MT speed in km/h");
        cmd->add_option("--tau-ms", tau_ms, "SSB period in ms");
        cmd->add_option("--tb-ms", tb_ms, "beam reselection delay in ms");
        cmd->add_option("--tc-ms", tc_ms, "cell handover delay in ms");
        cmd->add_option("--mode", mode, "overhead mode: limited, full or probabilistic");
        cmd->add_option("--rel-tol", rel_tol, "quadrature relative tolerance")
            ->capture_default_str();
        cmd->add_option("--abs-tol", abs_tol, "quadrature absolute tolerance")
            ->capture_default_str();
    }

    // Precedence: preset < scenario file < individual flags.
    std::pair<Scenario, MobilityProfile> resolve() const {
        Preset base = preset(preset_name);
        Scenario s = base.scenario;
        MobilityProfile m = base.mobility;
        if (!scenario_file.empty()) {
            ScenarioFile f = load_scenario_file(scenario_file);
            s = f.scenario;
            m = f.mobility;
        }
        if (isd_m) s.bs_intensity_per_m2 = isd_to_intensity(*isd_m);
        if (speed_kmh) m.speed_mps = kmh_to_mps(*speed_kmh);
        if (tau_ms) m.ssb_period_s = ms_to_s(*tau_ms);
        if (tb_ms) m.beam_reselect_delay_s = ms_to_s(*tb_ms);
        if (tc_ms) m.cell_handover_delay_s = ms_to_s(*tc_ms);
        if (mode) m.overhead_mode = overhead_mode_from_string(*mode);
        for (const auto& warning : validate(s))
            std::cerr << "warning: " << warning << "\n";
        validate(m);
        return {s, m};
    }

    QuadratureSettings quadrature() const {
        QuadratureSettings q;
        q.relative_tolerance = rel_tol;
        q.absolute_tolerance = abs_tol;
        return q;
    }
};

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 1;
        char extra = 0;
        int fields = std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra);
        if (fields < 2 || fields > 3 || step <= 0 || stop < start)
            throw std::invalid_argument("bad range '" + text + "' (want start:stop[:step])");
        for (double v = start; v <= stop + 1e-9; v += step) values.push_back(v);
        return values;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    if (values.empty()) throw std::invalid_argument("empty value list '" + text + "'");
    return values;
}

Axis parse_axis(const std::string& spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("axis '" + spec + "' must look like name=values");
    Axis axis;
    axis.kind = axis_kind_from_string(spec.substr(0, eq));
    std::string rhs = spec.substr(eq + 1);
    if (axis.kind == Axis::Kind::Mode) {
        std::stringstream ss(rhs);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) axis.modes.push_back(overhead_mode_from_string(item));
        if (axis.modes.empty()) throw std::invalid_argument("empty mode list '" + spec + "'");
    } else {
        axis.values = parse_number_list(rhs);
    }
    return axis;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write output file '" + out_path + "'");
    os << content;
}

void emit_csv(const std::string& out_path, const CurveTable& table) {
    std::ostringstream os;
    write_csv(os, table);
    emit(out_path, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"beam-management planning engine for beamformed Poisson cellular downlinks"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads,
                   "worker thread count (default: BEAMPLAN_THREADS or hardware)");

    // preset -----------------------------------------------------------
    auto* preset_cmd = app.add_subcommand("preset", "inspect bundled deployment presets");
    preset_cmd->require_subcommand(1);
    auto* preset_list = preset_cmd->add_subcommand("list", "list preset names and key values");
    std::string preset_show_name;
    auto* preset_show = preset_cmd->add_subcommand("show", "dump one preset as scenario JSON");
    preset_show->add_option("name", preset_show_name, "preset name")->required();

    // sweep ------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a metric over a parameter grid");
    ScenarioOptions sweep_scenario;
    sweep_scenario.attach(sweep_cmd);
    std::string sweep_metric = "effective_ase";
    std::string sweep_axis, sweep_axis2, sweep_out;
    int sweep_n = 6, sweep_k = 0;
    std::optional<double> sweep_beta, sweep_beta_db;
    bool sweep_mc = false;
    std::uint64_t sweep_seed = 1;
    std::size_t sweep_realizations = 100000;
    sweep_cmd->add_option("--metric", sweep_metric, "metric to evaluate")
        ->capture_default_str();
    sweep_cmd->add_option("--axis", sweep_axis, "primary axis, e.g. n=1:10 or isd=75,125,250")
        ->required();
    sweep_cmd->add_option("--axis2", sweep_axis2, "optional secondary axis");
    sweep_cmd->add_option("--n", sweep_n, "BS beam exponent when not swept")
        ->capture_default_str();
    sweep_cmd->add_option("--k", sweep_k, "MT beam exponent when not swept")
        ->capture_default_str();
    sweep_cmd->add_option("--beta", sweep_beta, "linear SINR threshold for success_probability");
    sweep_cmd->add_option("--beta-db", sweep_beta_db, "SINR threshold in dB");
    sweep_cmd->add_flag("--mc", sweep_mc, "attach Monte Carlo cross-check columns");
    sweep_cmd->add_option("--seed", sweep_seed, "simulation seed")->capture_default_str();
    sweep_cmd->add_option("--realizations", sweep_realizations, "simulation realizations")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "output CSV path (default stdout)");

    // optimize ----------------------------------------------------------
    auto* opt_cmd = app.add_subcommand("optimize", "argmax of effective ASE over beam exponents");
    ScenarioOptions opt_scenario;
    opt_scenario.attach(opt_cmd);
    bool opt_two_d = false;
    int opt_k = 0, opt_n_min = 1, opt_n_max = 12, opt_k_min = 0, opt_k_max = 9;
    std::string opt_out;
    opt_cmd->add_flag("--two-d", opt_two_d, "search jointly over n and k");
    opt_cmd->add_option("--k", opt_k, "fixed MT beam exponent for the 1-D search")
        ->capture_default_str();
    opt_cmd->add_option("--n-min", opt_n_min)->capture_default_str();
    opt_cmd->add_option("--n-max", opt_n_max)->capture_default_str();
    opt_cmd->add_option("--k-min", opt_k_min)->capture_default_str();
    opt_cmd->add_option("--k-max", opt_k_max)->capture_default_str();
    opt_cmd->add_option("--out", opt_out, "output JSON path (default stdout)");

    // reproduce ----------------------------------------------------------
    auto* repro_cmd = app.add_subcommand("reproduce", "emit a bundled study recipe");
    std::string repro_id, repro_out;
    bool repro_list = false;
    double repro_rel_tol = 1e-6;
    repro_cmd->add_option("id", repro_id, "figure id, e.g. fig7c");
    repro_cmd->add_flag("--list", repro_list, "list available figure ids");
    repro_cmd->add_option("--rel-tol", repro_rel_tol, "quadrature relative tolerance")
        ->capture_default_str();
    repro_cmd->add_option("--out", repro_out, "output CSV path (default stdout)");

    // simulate ------------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo coverage/rate estimates");
    ScenarioOptions sim_scenario;
    sim_scenario.attach(sim_cmd);
    int sim_n = 6, sim_k = 0;
    double sim_beta_db = 10.0;
    std::uint64_t sim_seed = 1;
    std::size_t sim_realizations = 100000;
    std::string sim_fading = "rayleigh";
    double sim_nakagami_m = 4.0;
    std::string sim_dump;
    sim_cmd->add_option("--n", sim_n, "BS beam exponent")->capture_default_str();
    sim_cmd->add_option("--k", sim_k, "MT beam exponent")->capture_default_str();
    sim_cmd->add_option("--beta-db", sim_beta_db, "coverage threshold in dB")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim_seed, "simulation seed")->capture_default_str();
    sim_cmd->add_option("--realizations", sim_realizations)->capture_default_str();
    sim_cmd->add_option("--fading", sim_fading, "rayleigh or nakagami")->capture_default_str();
    sim_cmd->add_option("--nakagami-m", sim_nakagami_m, "Nakagami shape for LOS links")
        ->capture_default_str();
    sim_cmd->add_option("--dump-samples", sim_dump,
                        "write one CSV row per realization to this path");

    // validate -------------------------------------------------------------
    auto* val_cmd = app.add_subcommand("validate", "analytic vs simulation checks");
    std::string val_what = "all";
    std::uint64_t val_seed = 1;
    std::size_t val_queries = 20, val_realizations = 100000, val_trajectories = 10000;
    val_cmd->add_option("what", val_what, "coverage, crossings, beam-switch or all")
        ->capture_default_str();
    val_cmd->add_option("--seed", val_seed)->capture_default_str();
    val_cmd->add_option("--queries", val_queries, "randomized coverage queries")
        ->capture_default_str();
    val_cmd->add_option("--realizations", val_realizations)->capture_default_str();
    val_cmd->add_option("--trajectories", val_trajectories)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    if (threads > 0) setenv("BEAMPLAN_THREADS", std::to_string(threads).c_str(), 1);

    try {
        if (*preset_list) {
            std::printf("%-10s %8s %8s %8s %8s %10s %8s\n", "name", "f_c/GHz", "W/MHz", "P/dBm",
                        "ISD/m", "alpha", "R_c/m");
            for (const auto& name : preset_names()) {
                Preset p = preset(name);
                char alpha[24], rc[16];
                std::snprintf(alpha, sizeof alpha, "%.1f/%.1f", p.scenario.alpha_los,
                              p.scenario.alpha_nlos);
                if (p.scenario.has_los_ball())
                    std::snprintf(rc, sizeof rc, "%g", *p.scenario.los_ball_radius_m);
                else
                    std::snprintf(rc, sizeof rc, "-");
                std::printf("%-10s %8g %8g %8g %8g %10s %8s\n", name.c_str(),
                            p.scenario.carrier_frequency_hz / 1e9, p.scenario.bandwidth_hz / 1e6,
                            watt_to_dbm(p.scenario.tx_power_w),
                            intensity_to_isd(p.scenario.bs_intensity_per_m2), alpha, rc);
            }
            return kExitOk;
        }
        if (*preset_show) {
            Preset p = preset(preset_show_name);
            std::cout << scenario_to_json(p.scenario, p.mobility).dump(2) << "\n";
            return kExitOk;
        }

        if (*sweep_cmd) {
            auto [scenario, mobility] = sweep_scenario.resolve();
            SweepSpec spec;
            spec.scenario = scenario;
            spec.mobility = mobility;
            spec.base_n = sweep_n;
            spec.base_k = sweep_k;
            spec.metric = metric_from_string(sweep_metric);
            spec.quadrature = sweep_scenario.quadrature();
            if (sweep_beta && sweep_beta_db)
                throw std::invalid_argument("give --beta or --beta-db, not both");
            if (sweep_beta) spec.beta_linear = *sweep_beta;
            if (sweep_beta_db) spec.beta_linear = db_to_linear(*sweep_beta_db);
            spec.axes.push_back(parse_axis(sweep_axis));
            if (!sweep_axis2.empty()) spec.axes.push_back(parse_axis(sweep_axis2));
            if (sweep_mc) {
                McCrossCheck mc;
                mc.plan.seed = sweep_seed;
                mc.plan.realizations = sweep_realizations;
                spec.mc = mc;
            }
            CurveTable table = run_sweep(spec);
            emit_csv(sweep_out, table);
            for (const auto& row : table.rows) {
                const auto& status = row.back();
                if (std::holds_alternative<std::string>(status) &&
                    std::get<std::string>(status) != "ok")
                    return kExitNumeric;
            }
            return kExitOk;
        }

        if (*opt_cmd) {
            auto [scenario, mobility] = opt_scenario.resolve();
            Optimum optimum =
                opt_two_d
                    ? optimal_nk(scenario, mobility, GainModel::standard(),
                                 {opt_n_min, opt_n_max}, {opt_k_min, opt_k_max},
                                 opt_scenario.quadrature())
                    : optimal_n(opt_k, scenario, mobility, GainModel::standard(),
                                {opt_n_min, opt_n_max}, opt_scenario.quadrature());
            nlohmann::json doc;
            doc["best_n"] = optimum.best_n;
            doc["best_k"] = optimum.best_k;
            doc["best_effective_ase_nats_per_s_per_m2"] = optimum.best_value;
            doc["best_effective_ase_nats_per_s_per_hz_per_km2"] =
                effective_ase_to_report_units(optimum.best_value, scenario.bandwidth_hz);
            doc["best_bs_beams"] = 1 << optimum.best_n;
            doc["best_mt_beams"] = 1 << optimum.best_k;
            nlohmann::json curve = nlohmann::json::array();
            bool any_failed = false;
            for (const auto& pt : optimum.full_curve) {
                nlohmann::json row;
                row["n"] = pt.n;
                row["k"] = pt.k;
                if (pt.failed) {
                    row["status"] = "numeric_error";
                    any_failed = true;
                } else {
                    row["effective_ase_nats_per_s_per_m2"] = pt.value;
                    row["status"] = "ok";
                }
                curve.push_back(row);
            }
            doc["curve"] = curve;
            doc["scenario_hash"] = scenario_hash(scenario, mobility);
            doc["engine_version"] = BEAMPLAN_VERSION;
            emit(opt_out, doc.dump(2) + "\n");
            return any_failed ? kExitNumeric : kExitOk;
        }

        if (*repro_cmd) {
            if (repro_list || repro_id.empty()) {
                for (const auto& id : reproduce_ids()) std::cout << id << "\n";
                return repro_list || repro_id.empty() ? kExitOk : kExitUsage;
            }
            QuadratureSettings quad;
            quad.relative_tolerance = repro_rel_tol;
            CurveTable table = reproduce(repro_id, quad);
            table.metadata.emplace_back("figure_id", repro_id);
            emit_csv(repro_out, table);
            return kExitOk;
        }

        if (*sim_cmd) {
            auto [scenario, mobility] = sim_scenario.resolve();
            SimulationPlan plan;
            plan.seed = sim_seed;
            plan.realizations = sim_realizations;
            if (sim_fading == "nakagami")
                plan.fading = Fading::nakagami(sim_nakagami_m);
            else if (sim_fading != "rayleigh")
                throw std::invalid_argument("unknown fading model '" + sim_fading + "'");
            BeamConfig config(sim_n, sim_k);
            SinrBatch batch = simulate_sinr_samples(scenario, config, GainModel::standard(),
                                                    mobility, plan);
            double beta = db_to_linear(sim_beta_db);
            EstimateWithError cov = coverage_from_samples(batch, beta);
            EstimateWithError rate =
                rate_from_samples(batch, scenario.bandwidth_hz, scenario.sinr_cap_linear);
            std::printf("coverage(beta=%g dB) = %.6f (se %.2g, %zu realizations, %zu resampled)\n",
                        sim_beta_db, cov.mean, cov.standard_error, cov.sample_count,
                        cov.resampled);
            std::printf("rate = %.6g nats/s (se %.3g)\n", rate.mean, rate.standard_error);
            if (!sim_dump.empty()) {
                CurveTable dump;
                dump.columns = {"realization_id", "sinr_linear", "serving_distance_m",
                                "serving_gain", "los_flag"};
                for (std::size_t i = 0; i < batch.samples.size(); ++i) {
                    const auto& s = batch.samples[i];
                    dump.rows.push_back({static_cast<double>(i), s.sinr, s.serving_distance_m,
                                         s.serving_gain, static_cast<double>(s.los ? 1 : 0)});
                }
                dump.metadata.emplace_back("seed", std::to_string(plan.seed));
                append_standard_metadata(dump, scenario, mobility, QuadratureSettings{},
                                         plan.seed);
                emit_csv(sim_dump, dump);
            }
            return kExitOk;
        }

        if (*val_cmd) {
            std::vector<ValidationReport> reports;
            if (val_what == "coverage" || val_what == "all")
                reports.push_back(
                    validate_coverage(val_queries, val_realizations, val_seed));
            if (val_what == "crossings" || val_what == "all")
                reports.push_back(validate_crossings(100.0, val_trajectories, val_seed));
            if (val_what == "beam-switch" || val_what == "all")
                reports.push_back(validate_beam_switch(val_realizations, val_seed));
            if (reports.empty())
                throw std::invalid_argument("unknown validation '" + val_what +
                                            "' (coverage, crossings, beam-switch or all)");
            bool all_pass = true;
            for (const auto& r : reports) {
                print_report(stdout, r);
                all_pass = all_pass && r.all_pass;
            }
            return all_pass ? kExitOk : kExitValidation;
        }
    } catch (const QuadratureError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
