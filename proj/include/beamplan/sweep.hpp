// Sweep orchestration and plot-ready emission: grid sweeps of any metric
// over one or two axes, bundled figure recipes, analytic-vs-simulation
// validation reports, and deterministic CSV output. Every table carries a
// metadata block (scenario hash, engine version, quadrature settings, seed)
// sufficient to reproduce it bit-identically; the creation timestamp is the
// only volatile field and can be pinned via BEAMPLAN_TIMESTAMP.
#pragma once

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "beamplan/montecarlo.hpp"
#include "beamplan/optimizer.hpp"
#include "beamplan/scenario_io.hpp"

#define BEAMPLAN_VERSION "1.0.0"

namespace beamplan {

enum class Metric {
    EffectiveAse,
    ErgodicRate,
    SuccessProbability,
    PBmBs,
    PBmMt,
    OverheadFraction,
    TimeOfStay,
    BeamSwitchProb,
};

inline const std::vector<std::pair<std::string, Metric>>& metric_names() {
    static const std::vector<std::pair<std::string, Metric>> names = {
        {"effective_ase", Metric::EffectiveAse},
        {"ergodic_rate", Metric::ErgodicRate},
        {"success_probability", Metric::SuccessProbability},
        {"p_bm_bs", Metric::PBmBs},
        {"p_bm_mt", Metric::PBmMt},
        {"overhead_fraction", Metric::OverheadFraction},
        {"time_of_stay", Metric::TimeOfStay},
        {"beam_switch_prob", Metric::BeamSwitchProb},
    };
    return names;
}

inline Metric metric_from_string(const std::string& s) {
    for (const auto& [name, m] : metric_names())
        if (name == s) return m;
    std::string msg = "unknown metric '" + s + "'; valid metrics:";
    for (const auto& [name, m] : metric_names()) msg += " " + name;
    throw std::invalid_argument(msg);
}

inline std::string to_string(Metric m) {
    for (const auto& [name, metric] : metric_names())
        if (metric == m) return name;
    return "?";
}

/// One sweep axis. Numeric values are in the external units of the column
/// they produce (isd in m, speed in km/h, tau in ms, n/k as integers).
struct Axis {
    enum class Kind { N, K, Isd, Speed, Tau, Mode };
    Kind kind = Kind::N;
    std::vector<double> values;
    std::vector<OverheadMode> modes;

    std::size_t size() const {
        return kind == Kind::Mode ? modes.size() : values.size();
    }
};

inline Axis::Kind axis_kind_from_string(const std::string& s) {
    if (s == "n") return Axis::Kind::N;
    if (s == "k") return Axis::Kind::K;
    if (s == "isd") return Axis::Kind::Isd;
    if (s == "v") return Axis::Kind::Speed;
    if (s == "tau") return Axis::Kind::Tau;
    if (s == "mode") return Axis::Kind::Mode;
    throw std::invalid_argument("unknown sweep axis '" + s + "' (expected n, k, isd, v, tau or mode)");
}

inline std::string axis_column_name(Axis::Kind kind) {
    switch (kind) {
        case Axis::Kind::N: return "n";
        case Axis::Kind::K: return "k";
        case Axis::Kind::Isd: return "isd_m";
        case Axis::Kind::Speed: return "speed_kmh";
        case Axis::Kind::Tau: return "ssb_period_ms";
        case Axis::Kind::Mode: return "overhead_mode";
    }
    return "?";
}

/// Optional simulation cross-check attached to a sweep.
struct McCrossCheck {
    SimulationPlan plan;
};

struct SweepSpec {
    Scenario scenario;
    MobilityProfile mobility;
    int base_n = 6;
    int base_k = 0;
    GainModel gain_model = GainModel::standard();
    Metric metric = Metric::EffectiveAse;
    double beta_linear = 1.0;  // threshold for success_probability
    std::vector<Axis> axes;    // one or two
    QuadratureSettings quadrature;
    std::optional<McCrossCheck> mc;
};

struct CurveTable {
    using Cell = std::variant<double, std::string>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
};

// ---------------------------------------------------------------------------
// Formatting and emission

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// CSV with a leading '#'-prefixed metadata block, RFC-4180-style rows,
/// '.' decimal separator, LF line ends.
inline void write_csv(std::ostream& os, const CurveTable& table) {
    for (const auto& [key, value] : table.metadata) os << "# " << key << " = " << value << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << csv_escape(table.columns[c]);
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ",";
            if (std::holds_alternative<double>(row[c]))
                os << format_double(std::get<double>(row[c]));
            else
                os << csv_escape(std::get<std::string>(row[c]));
        }
        os << "\n";
    }
}

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string scenario_hash(const Scenario& s, const MobilityProfile& m) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(scenario_to_json(s, m).dump())));
    return buf;
}

/// ISO-8601 UTC creation stamp; BEAMPLAN_TIMESTAMP overrides it so byte
/// reproducibility can be asserted end to end.
inline std::string creation_timestamp() {
    if (const char* env = std::getenv("BEAMPLAN_TIMESTAMP")) return env;
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

inline void append_standard_metadata(CurveTable& table, const Scenario& s,
                                     const MobilityProfile& m, const QuadratureSettings& q,
                                     std::optional<std::uint64_t> seed = {}) {
    table.metadata.emplace_back("engine_version", BEAMPLAN_VERSION);
    table.metadata.emplace_back("scenario_hash", scenario_hash(s, m));
    table.metadata.emplace_back("quadrature_rel_tol", format_double(q.relative_tolerance));
    table.metadata.emplace_back("quadrature_abs_tol", format_double(q.absolute_tolerance));
    table.metadata.emplace_back("quadrature_max_subdivisions", std::to_string(q.max_subdivisions));
    table.metadata.emplace_back("quadrature_tail_cutoff", format_double(q.tail_mass_cutoff));
    if (seed) table.metadata.emplace_back("seed", std::to_string(*seed));
    table.metadata.emplace_back("created", creation_timestamp());
}

// ---------------------------------------------------------------------------
// Sweeps

namespace detail {

struct GridPoint {
    Scenario scenario;
    MobilityProfile mobility;
    int n;
    int k;
    std::vector<CurveTable::Cell> axis_cells;
};

inline void apply_axis(GridPoint& point, const Axis& axis, std::size_t index) {
    switch (axis.kind) {
        case Axis::Kind::N:
            point.n = static_cast<int>(axis.values[index]);
            point.axis_cells.emplace_back(static_cast<double>(point.n));
            break;
        case Axis::Kind::K:
            point.k = static_cast<int>(axis.values[index]);
            point.axis_cells.emplace_back(static_cast<double>(point.k));
            break;
        case Axis::Kind::Isd:
            point.scenario.bs_intensity_per_m2 = isd_to_intensity(axis.values[index]);
            point.axis_cells.emplace_back(axis.values[index]);
            break;
        case Axis::Kind::Speed:
            point.mobility.speed_mps = kmh_to_mps(axis.values[index]);
            point.axis_cells.emplace_back(axis.values[index]);
            break;
        case Axis::Kind::Tau:
            point.mobility.ssb_period_s = ms_to_s(axis.values[index]);
            point.axis_cells.emplace_back(axis.values[index]);
            break;
        case Axis::Kind::Mode:
            point.mobility.overhead_mode = axis.modes[index];
            point.axis_cells.emplace_back(std::string(to_string(axis.modes[index])));
            break;
    }
}

}  // namespace detail

/// Evaluates the metric over the grid spanned by the axes, one row per
/// point, axes in row-major order. Expensive metrics are deduplicated over
/// points that share all rate-relevant parameters (an overhead-mode axis
/// never re-runs the quadrature) and evaluated concurrently; rows are
/// assembled in grid order. Per-point quadrature failures are flagged in
/// the status column instead of aborting the sweep.
inline CurveTable run_sweep(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw std::invalid_argument("a sweep needs one or two axes");
    for (const auto& axis : spec.axes)
        if (axis.size() == 0) throw std::invalid_argument("sweep axis has no values");
    validate(spec.scenario);
    validate(spec.mobility);
    if (spec.metric == Metric::SuccessProbability && !(spec.beta_linear > 0))
        throw std::invalid_argument("success_probability sweeps need a positive beta");

    // Materialize the grid.
    std::vector<detail::GridPoint> points;
    std::size_t outer = spec.axes[0].size();
    std::size_t inner = spec.axes.size() == 2 ? spec.axes[1].size() : 1;
    points.reserve(outer * inner);
    for (std::size_t i = 0; i < outer; ++i) {
        for (std::size_t j = 0; j < inner; ++j) {
            detail::GridPoint p{spec.scenario, spec.mobility, spec.base_n, spec.base_k, {}};
            detail::apply_axis(p, spec.axes[0], i);
            if (spec.axes.size() == 2) detail::apply_axis(p, spec.axes[1], j);
            points.push_back(std::move(p));
        }
    }

    CurveTable table;
    for (const auto& axis : spec.axes) table.columns.push_back(axis_column_name(axis.kind));

    const bool needs_quadrature = spec.metric == Metric::EffectiveAse ||
                                  spec.metric == Metric::ErgodicRate ||
                                  spec.metric == Metric::SuccessProbability;

    // Expensive part per point, deduplicated over everything but the
    // overhead mode (which only scales the airtime factor).
    struct Expensive {
        double value = 0.0;       // rate or success probability
        double mc = std::nan(""); // simulation counterpart
        double mc_se = 0.0;
        bool failed = false;
    };
    std::vector<Expensive> expensive(points.size());
    if (needs_quadrature) {
        using Key = std::tuple<int, int, double, double, double>;
        std::map<Key, std::vector<std::size_t>> groups;
        for (std::size_t idx = 0; idx < points.size(); ++idx) {
            const auto& p = points[idx];
            groups[{p.n, p.k, p.scenario.bs_intensity_per_m2, p.mobility.speed_mps,
                    p.mobility.ssb_period_s}]
                .push_back(idx);
        }
        std::vector<std::vector<std::size_t>> unique;
        unique.reserve(groups.size());
        for (auto& [key, idxs] : groups) unique.push_back(std::move(idxs));

        auto evaluate_group = [&](std::size_t g) {
            const auto& p = points[unique[g][0]];
            Expensive e;
            BeamConfig config(p.n, p.k);
            double p_bs = misalignment_prob_bs(p.n, p.scenario.bs_intensity_per_m2,
                                               p.mobility.speed_mps, p.mobility.ssb_period_s);
            double p_mt = misalignment_prob_mt(p.k, p.scenario.bs_intensity_per_m2,
                                               p.mobility.speed_mps, p.mobility.ssb_period_s);
            try {
                if (spec.metric == Metric::SuccessProbability) {
                    CoverageQuery q{p.scenario, config, spec.gain_model, p_bs, p_mt,
                                    spec.beta_linear};
                    e.value = success_probability(q, spec.quadrature);
                } else {
                    e.value = ergodic_rate(p.scenario, config, spec.gain_model, p_bs, p_mt,
                                           spec.quadrature);
                }
            } catch (const QuadratureError&) {
                e.failed = true;
            }
            if (spec.mc && !e.failed) {
                if (spec.metric == Metric::SuccessProbability) {
                    auto est = simulate_coverage(p.scenario, config, spec.gain_model, p.mobility,
                                                 spec.beta_linear, spec.mc->plan);
                    e.mc = est.mean;
                    e.mc_se = est.standard_error;
                } else {
                    auto est = simulate_rate(p.scenario, config, spec.gain_model, p.mobility,
                                             spec.mc->plan);
                    e.mc = est.mean;
                    e.mc_se = est.standard_error;
                }
            }
            for (std::size_t idx : unique[g]) expensive[idx] = e;
        };
        // Simulation parallelizes internally; quadrature-only sweeps
        // parallelize across grid points instead.
        if (spec.mc) {
            for (std::size_t g = 0; g < unique.size(); ++g) evaluate_group(g);
        } else {
            parallel_for(unique.size(), evaluate_group);
        }
    }

    // Metric columns.
    switch (spec.metric) {
        case Metric::EffectiveAse:
            table.columns.push_back("effective_ase_nats_per_s_per_m2");
            table.columns.push_back("effective_ase_nats_per_s_per_hz_per_km2");
            break;
        case Metric::ErgodicRate:
            table.columns.push_back("ergodic_rate_nats_per_s");
            break;
        case Metric::SuccessProbability:
            table.columns.push_back("success_probability");
            break;
        case Metric::PBmBs:
            table.columns.push_back("p_bm_bs");
            break;
        case Metric::PBmMt:
            table.columns.push_back("p_bm_mt");
            break;
        case Metric::OverheadFraction:
            table.columns.push_back("overhead_fraction");
            break;
        case Metric::TimeOfStay:
            table.columns.push_back("time_of_stay_s");
            table.columns.push_back("effective_time_of_stay_s");
            break;
        case Metric::BeamSwitchProb:
            table.columns.push_back("beam_switch_prob");
            break;
    }
    bool mc_columns = spec.mc.has_value() && needs_quadrature;
    if (mc_columns) {
        table.columns.push_back("mc_mean");
        table.columns.push_back("mc_standard_error");
        table.columns.push_back("mc_pass");
    }
    table.columns.push_back("status");

    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        const auto& p = points[idx];
        std::vector<CurveTable::Cell> row = p.axis_cells;
        bool failed = false;
        double analytic = std::nan("");
        double mc_reference = std::nan("");
        double mc_se_out = expensive[idx].mc_se;
        double mc_tolerance = 0.0;

        switch (spec.metric) {
            case Metric::EffectiveAse: {
                failed = expensive[idx].failed;
                if (!failed) {
                    double overhead = total_overhead(BeamConfig(p.n, p.k), p.scenario, p.mobility);
                    double airtime = std::max(0.0, 1.0 - overhead);
                    analytic = p.scenario.bs_intensity_per_m2 * airtime * expensive[idx].value;
                    mc_reference = p.scenario.bs_intensity_per_m2 * airtime * expensive[idx].mc;
                    mc_se_out = p.scenario.bs_intensity_per_m2 * airtime * expensive[idx].mc_se;
                    mc_tolerance = std::max(3.0 * mc_se_out, 0.02 * std::abs(analytic));
                }
                row.emplace_back(analytic);
                row.emplace_back(failed ? std::nan("")
                                        : effective_ase_to_report_units(analytic,
                                                                        p.scenario.bandwidth_hz));
                break;
            }
            case Metric::ErgodicRate:
                failed = expensive[idx].failed;
                analytic = failed ? std::nan("") : expensive[idx].value;
                mc_reference = expensive[idx].mc;
                mc_tolerance = std::max(3.0 * expensive[idx].mc_se, 0.01 * std::abs(analytic));
                row.emplace_back(analytic);
                break;
            case Metric::SuccessProbability:
                failed = expensive[idx].failed;
                analytic = failed ? std::nan("") : expensive[idx].value;
                mc_reference = expensive[idx].mc;
                mc_tolerance = 3.0 * expensive[idx].mc_se + 0.005;
                row.emplace_back(analytic);
                break;
            case Metric::PBmBs:
                row.emplace_back(misalignment_prob_bs(p.n, p.scenario.bs_intensity_per_m2,
                                                      p.mobility.speed_mps,
                                                      p.mobility.ssb_period_s));
                break;
            case Metric::PBmMt:
                row.emplace_back(misalignment_prob_mt(p.k, p.scenario.bs_intensity_per_m2,
                                                      p.mobility.speed_mps,
                                                      p.mobility.ssb_period_s));
                break;
            case Metric::OverheadFraction:
                row.emplace_back(total_overhead(BeamConfig(p.n, p.k), p.scenario, p.mobility));
                break;
            case Metric::TimeOfStay:
                row.emplace_back(time_of_stay(p.n, p.scenario.bs_intensity_per_m2,
                                              p.mobility.speed_mps));
                row.emplace_back(effective_time_of_stay(p.n, p.scenario.bs_intensity_per_m2,
                                                        p.mobility.speed_mps,
                                                        p.mobility.ssb_period_s));
                break;
            case Metric::BeamSwitchProb:
                row.emplace_back(beam_switch_probability(p.k));
                break;
        }

        if (mc_columns) {
            row.emplace_back(mc_reference);
            row.emplace_back(mc_se_out);
            bool pass = !failed && std::isfinite(mc_reference) &&
                        std::abs(analytic - mc_reference) <= mc_tolerance;
            row.emplace_back(std::string(pass ? "pass" : "fail"));
        }
        row.emplace_back(std::string(failed ? "numeric_error" : "ok"));
        table.rows.push_back(std::move(row));
    }

    std::optional<std::uint64_t> seed;
    if (spec.mc) seed = spec.mc->plan.seed;
    table.metadata.emplace_back("metric", to_string(spec.metric));
    if (spec.metric == Metric::SuccessProbability)
        table.metadata.emplace_back("beta_linear", format_double(spec.beta_linear));
    append_standard_metadata(table, spec.scenario, spec.mobility, spec.quadrature, seed);
    return table;
}

}  // namespace beamplan
