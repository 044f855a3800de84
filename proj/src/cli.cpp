#include "qwalk/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qwalk/csv.hpp"
#include "qwalk/experiments.hpp"
#include "qwalk/svg.hpp"

namespace qwalk {

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const NotHermitian*>(&e) != nullptr ||
        dynamic_cast<const ConvergenceFailure*>(&e) != nullptr ||
        dynamic_cast<const NumericalCorruption*>(&e) != nullptr ||
        dynamic_cast<const BoundaryOverflow*>(&e) != nullptr) {
        return 3;
    }
    return 2;
}

namespace {

constexpr const char* kArtifact = "qwalk 1.0.0";
constexpr const char* kTvdNote =
    "tvd convention: sum_x |P(x)-Q(x)| over all sites (unhalved; range 0..2)";

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Shortest representation that re-parses to the same double; used for config
// echoes and column names (data cells use format_double's fixed 17 digits).
std::string format_short(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// All flag/option longs a subcommand accepts as config-file keys.
std::set<std::string> config_keys(const CLI::App* sub) {
    std::set<std::string> keys;
    for (const CLI::Option* opt : sub->get_options()) {
        for (const std::string& name : opt->get_lnames()) {
            if (name != "config" && name != "help") keys.insert(name);
        }
    }
    return keys;
}

/// Flat key=value file -> injected CLI tokens (flags then override: every
/// option takes the last occurrence).
std::vector<std::string> config_file_tokens(const std::string& path, const CLI::App* sub) {
    std::ifstream f(path);
    if (!f) throw InvalidConfig("cannot read config file " + path);
    std::set<std::string> keys = config_keys(sub);
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::string text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfig(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (keys.find(key) == keys.end()) {
            throw InvalidConfig(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                                "' for command " + sub->get_name());
        }
        if (key == "plot") {
            if (value == "1" || value == "true" || value == "yes" || value == "on") {
                tokens.push_back("--plot");
            } else if (value != "0" && value != "false" && value != "no" && value != "off") {
                throw InvalidConfig(path + ":" + std::to_string(lineno) +
                                    ": plot must be a boolean, got '" + value + "'");
            }
        } else {
            tokens.push_back("--" + key);
            tokens.push_back(value);
        }
    }
    return tokens;
}

std::vector<double> parse_p_list(const std::string& text) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string item = trim(text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos));
        if (item.empty()) throw InvalidConfig("empty entry in p list '" + text + "'");
        char* end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size() || !std::isfinite(v)) {
            throw InvalidConfig("cannot parse p value '" + item + "'");
        }
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InvalidConfig("p value " + item + " outside [0, 1]");
        }
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

NoiseTarget parse_target(const std::string& name) {
    if (name == "coin") return NoiseTarget::Coin;
    if (name == "position") return NoiseTarget::Position;
    return NoiseTarget::Both;
}

struct RunConfig {
    std::string lattice = "line";
    int64_t steps = 100;
    int64_t size = 29;
    int64_t horizon = 0;  // 0 -> 10 * size
    std::string noise = "both";
    double p = 0.0;
    double p_min = 0.0;
    double p_max = 0.2;
    int64_t p_count = 41;
    std::string p_list = "0,0.05,0.1";
    double epsilon = 0.0;  // 0 -> 1/N
    int64_t restarts = -1;
    int64_t mixing_steps = 100;
    int64_t samples = 100000;
    uint64_t seed = 1;
    int jobs = 1;
    std::string out;
    bool plot = false;
    std::string config_path;
};

std::vector<std::string> provenance(const std::string& echo, bool tvd_note) {
    std::vector<std::string> c;
    c.push_back(std::string("generated: ") + iso_timestamp());
    c.push_back(std::string("artifact: ") + kArtifact);
    c.push_back("config: " + echo);
    if (tvd_note) c.push_back(kTvdNote);
    return c;
}

void emit(const RunConfig& rc, const ResultTable& table, const std::string& title,
          const std::string& x_label, const std::string& y_label,
          const std::vector<PlotSeries>& series) {
    std::string csv = render_csv(table);
    if (rc.out.empty()) {
        std::fwrite(csv.data(), 1, csv.size(), stdout);
        return;
    }
    write_file_atomic(rc.out, csv);
    if (rc.plot) {
        std::string svg_path = rc.out;
        if (svg_path.size() > 4 && svg_path.compare(svg_path.size() - 4, 4, ".csv") == 0) {
            svg_path.replace(svg_path.size() - 4, 4, ".svg");
        } else {
            svg_path += ".svg";
        }
        write_file_atomic(svg_path, render_plot_svg(title, x_label, y_label, series));
    }
}

Lattice lattice_for(const RunConfig& rc) {
    if (rc.lattice == "cycle") return Lattice::cycle(rc.size);
    return Lattice::line(std::max<int64_t>(rc.steps, 1));
}

std::string lattice_echo(const RunConfig& rc) {
    if (rc.lattice == "cycle") return "lattice=cycle size=" + format_int(rc.size);
    return "lattice=line";
}

void run_simulate(const RunConfig& rc) {
    Lattice lat = lattice_for(rc);
    WalkConfig cfg{lat, rc.steps, NoiseModel{parse_target(rc.noise), rc.p}};
    ObserverSet obs;
    obs.sigma = lat.is_line();
    obs.tvd = obs.negativity = true;
    EvolveResult result = evolve(cfg, obs);

    ResultTable table;
    table.comments = provenance("command=simulate " + lattice_echo(rc) +
                                    " steps=" + format_int(rc.steps) + " noise=" + rc.noise +
                                    " p=" + format_short(rc.p),
                                true);
    table.header = {"t", "sigma", "tvd", "negativity"};
    PlotSeries s_sigma{"sigma", {}, {}}, s_tvd{"tvd", {}, {}}, s_neg{"negativity", {}, {}};
    for (size_t t = 0; t < result.series.records.size(); ++t) {
        const StepRecord& rec = result.series.records[t];
        table.rows.push_back({format_int(static_cast<int64_t>(t)), format_double(rec.sigma),
                              format_double(rec.tvd), format_double(rec.negativity)});
        double td = static_cast<double>(t);
        s_sigma.x.push_back(td);
        s_sigma.y.push_back(rec.sigma);
        s_tvd.x.push_back(td);
        s_tvd.y.push_back(rec.tvd);
        s_neg.x.push_back(td);
        s_neg.y.push_back(rec.negativity);
    }
    std::vector<PlotSeries> series{s_tvd, s_neg};
    if (lat.is_line()) series.insert(series.begin(), s_sigma);
    emit(rc, table, "walk observables", "t", "value", series);
}

void run_sweep(const RunConfig& rc) {
    if (rc.p_count < 1) throw InvalidConfig("sweep grid needs at least one point");
    if (!(rc.p_min <= rc.p_max)) throw InvalidConfig("sweep grid needs p-min <= p-max");
    std::vector<double> grid(static_cast<size_t>(rc.p_count));
    if (rc.p_count == 1) {
        grid[0] = rc.p_min;
    } else {
        double step = (rc.p_max - rc.p_min) / static_cast<double>(rc.p_count - 1);
        for (int64_t i = 0; i < rc.p_count; ++i) {
            grid[static_cast<size_t>(i)] = rc.p_min + step * static_cast<double>(i);
        }
    }
    Lattice lat = Lattice::line(std::max<int64_t>(rc.steps, 1));
    std::vector<SweepRow> rows = sweep_noise(lat, rc.steps, parse_target(rc.noise), grid, rc.jobs);

    ResultTable table;
    table.comments = provenance(
        "command=sweep steps=" + format_int(rc.steps) + " noise=" + rc.noise +
            " p-min=" + format_short(rc.p_min) + " p-max=" + format_short(rc.p_max) +
            " p-count=" + format_int(rc.p_count) + " jobs=" + format_int(rc.jobs),
        true);
    table.header = {"p", "tvd_final", "negativity_final", "sigma_final"};
    PlotSeries s_tvd{"tvd_final", {}, {}}, s_neg{"negativity_final", {}, {}};
    for (const SweepRow& row : rows) {
        table.rows.push_back({format_double(row.p), format_double(row.tvd_final),
                              format_double(row.negativity_final),
                              format_double(row.sigma_final)});
        s_tvd.x.push_back(row.p);
        s_tvd.y.push_back(row.tvd_final);
        s_neg.x.push_back(row.p);
        s_neg.y.push_back(row.negativity_final);
    }
    emit(rc, table, "noise sweep", "p", "value", {s_tvd, s_neg});
}

void run_mixing(const RunConfig& rc) {
    int64_t horizon = rc.horizon > 0 ? rc.horizon : 10 * rc.size;
    CycleMixingOutcome out =
        cycle_mixing_run(rc.size, parse_target(rc.noise), rc.p, horizon, rc.epsilon);
    double eps = out.instantaneous.epsilon;

    ResultTable table;
    table.comments = provenance("command=mixing size=" + format_int(rc.size) +
                                    " noise=" + rc.noise + " p=" + format_short(rc.p) +
                                    " horizon=" + format_int(horizon) +
                                    " epsilon=" + format_short(eps) +
                                    (rc.restarts >= 0 ? " restarts=" + format_int(rc.restarts)
                                                      : std::string()),
                                true);
    table.header = {"t", "tvd", "tvd_averaged", "negativity"};
    PlotSeries s_tvd{"tvd", {}, {}}, s_avg{"tvd_averaged", {}, {}}, s_neg{"negativity", {}, {}};
    for (size_t t = 0; t < out.series.records.size(); ++t) {
        const StepRecord& rec = out.series.records[t];
        table.rows.push_back({format_int(static_cast<int64_t>(t)), format_double(rec.tvd),
                              format_double(out.tvd_averaged[t]), format_double(rec.negativity)});
        double td = static_cast<double>(t);
        s_tvd.x.push_back(td);
        s_tvd.y.push_back(rec.tvd);
        s_avg.x.push_back(td);
        s_avg.y.push_back(out.tvd_averaged[t]);
        s_neg.x.push_back(td);
        s_neg.y.push_back(rec.negativity);
    }
    auto mixing_text = [](const MixingResult& m) {
        return m.reached() ? format_int(*m.mixing_time)
                           : ("NotReached (horizon " + format_int(m.horizon) + ")");
    };
    table.footer_comments.push_back("epsilon = " + format_double(eps));
    table.footer_comments.push_back("mixing_time_instantaneous = " +
                                    mixing_text(out.instantaneous));
    table.footer_comments.push_back("mixing_time_averaged = " + mixing_text(out.averaged));
    if (rc.restarts >= 0) {
        Distribution warm = warm_start_distribution(rc.size, horizon, rc.restarts);
        double warm_tvd = tvd(warm, uniform_reference(warm.lattice));
        table.footer_comments.push_back("warm_start_restarts = " + format_int(rc.restarts));
        table.footer_comments.push_back("warm_start_tvd_to_uniform = " +
                                        format_double(warm_tvd));
    }
    emit(rc, table, "cycle mixing", "t", "value", {s_tvd, s_avg, s_neg});
}

void run_decay(const RunConfig& rc) {
    std::vector<double> ps = parse_p_list(rc.p_list);
    std::vector<std::vector<double>> series =
        negativity_decay_run(rc.steps, ps, parse_target(rc.noise), rc.jobs);

    ResultTable table;
    table.comments =
        provenance("command=decay steps=" + format_int(rc.steps) + " noise=" + rc.noise +
                       " p-list=" + rc.p_list + " jobs=" + format_int(rc.jobs),
                   false);
    table.header = {"t"};
    std::vector<PlotSeries> plots;
    for (double p : ps) {
        table.header.push_back("negativity_p" + format_short(p));
        plots.push_back(PlotSeries{"p=" + format_short(p), {}, {}});
    }
    for (int64_t t = 0; t <= rc.steps; ++t) {
        std::vector<std::string> row{format_int(t)};
        for (size_t i = 0; i < ps.size(); ++i) {
            double v = series[i][static_cast<size_t>(t)];
            row.push_back(format_double(v));
            plots[i].x.push_back(static_cast<double>(t));
            plots[i].y.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    emit(rc, table, "negativity decay", "t", "negativity", plots);
}

void run_resources(const RunConfig& rc) {
    ResourceMode mode;
    if (rc.lattice == "cycle") {
        mode = ResourceMode{Lattice::Kind::Cycle, rc.size, rc.mixing_steps};
    } else {
        mode = ResourceMode{Lattice::Kind::Line, rc.steps, 0};
    }
    ResourceEstimate est = resource_estimate(mode, parse_target(rc.noise), rc.p);

    ResultTable table;
    std::string echo = "command=resources " + lattice_echo(rc) + " noise=" + rc.noise +
                       " p=" + format_short(rc.p);
    if (rc.lattice == "cycle") {
        echo += " mixing-steps=" + format_int(rc.mixing_steps);
    } else {
        echo += " steps=" + format_int(rc.steps);
    }
    table.comments = provenance(echo, false);
    table.header = {"quantum_gates", "qubits",        "ancillae",     "expected_measurements",
                    "classical_steps", "gates_class", "qubits_class", "counting_model"};
    table.rows.push_back({format_int(est.quantum_gates), format_int(est.qubits),
                          format_int(est.ancillae), format_double(est.expected_measurements),
                          format_int(est.classical_steps), est.gates_class, est.qubits_class,
                          est.counting_model});
    emit(rc, table, "", "", "", {});
}

void run_oracle_check(const RunConfig& rc) {
    Lattice lat = lattice_for(rc);
    WalkConfig cfg{lat, rc.steps, NoiseModel{parse_target(rc.noise), rc.p}};
    EvolveResult exact_run = evolve(cfg, ObserverSet{});
    Distribution exact = position_distribution(exact_run.final_state);
    Distribution sampled = trajectory_oracle(cfg, rc.samples, rc.seed, rc.jobs);

    ResultTable table;
    table.comments = provenance("command=oracle-check " + lattice_echo(rc) +
                                    " steps=" + format_int(rc.steps) + " noise=" + rc.noise +
                                    " p=" + format_short(rc.p) +
                                    " samples=" + format_int(rc.samples) +
                                    " seed=" + std::to_string(rc.seed) +
                                    " jobs=" + format_int(rc.jobs),
                                true);
    table.header = {"x", "p_exact", "p_sampled", "abs_diff"};
    PlotSeries s_exact{"p_exact", {}, {}}, s_sampled{"p_sampled", {}, {}};
    for (int64_t q = 0; q < lat.n_pos(); ++q) {
        double pe = exact.probs[static_cast<size_t>(q)];
        double ps = sampled.probs[static_cast<size_t>(q)];
        table.rows.push_back({format_int(lat.x_of(q)), format_double(pe), format_double(ps),
                              format_double(std::abs(pe - ps))});
        s_exact.x.push_back(static_cast<double>(lat.x_of(q)));
        s_exact.y.push_back(pe);
        s_sampled.x.push_back(static_cast<double>(lat.x_of(q)));
        s_sampled.y.push_back(ps);
    }
    table.footer_comments.push_back("tvd_sampled_vs_exact = " +
                                    format_double(tvd(sampled, exact)));
    emit(rc, table, "trajectory oracle check", "x", "probability", {s_exact, s_sampled});
}

int run_cli(const std::vector<std::string>& raw_args) {
    RunConfig rc;
    CLI::App app{"Coined quantum walks on lines and cycles under projective-measurement noise"};
    app.name("qwalk");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    auto add_common = [&rc](CLI::App* sub, bool with_plot) {
        sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        sub->add_option("--config", rc.config_path, "flat key=value config file (flags win)");
        sub->add_option("--out", rc.out, "output CSV path (default: stdout)");
        if (with_plot) sub->add_flag("--plot", rc.plot, "also render an SVG plot (needs --out)");
    };
    auto add_noise = [&rc](CLI::App* sub) {
        sub->add_option("--noise", rc.noise, "noise target")
            ->check(CLI::IsMember({"coin", "position", "both"}));
        sub->add_option("--p", rc.p, "per-step measurement probability")
            ->check(CLI::Range(0.0, 1.0));
    };
    auto add_lattice = [&rc](CLI::App* sub) {
        sub->add_option("--lattice", rc.lattice, "lattice kind")
            ->check(CLI::IsMember({"line", "cycle"}));
        sub->add_option("--steps", rc.steps, "number of walk steps")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--size", rc.size, "cycle size N");
    };
    auto add_jobs = [&rc](CLI::App* sub) {
        sub->add_option("--jobs", rc.jobs, "worker threads")->check(CLI::PositiveNumber);
    };

    CLI::App* simulate = app.add_subcommand("simulate", "per-step observables of one walk");
    add_lattice(simulate);
    add_noise(simulate);
    add_common(simulate, true);

    CLI::App* sweep = app.add_subcommand("sweep", "final observables across a noise-rate grid");
    sweep->add_option("--steps", rc.steps, "number of walk steps")->check(CLI::PositiveNumber);
    sweep->add_option("--noise", rc.noise, "noise target")
        ->check(CLI::IsMember({"coin", "position", "both"}));
    sweep->add_option("--p-min", rc.p_min, "grid start")->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--p-max", rc.p_max, "grid end")->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--p-count", rc.p_count, "grid points")->check(CLI::PositiveNumber);
    add_jobs(sweep);
    add_common(sweep, true);

    CLI::App* mixing = app.add_subcommand("mixing", "cycle mixing run with mixing times");
    mixing->add_option("--size", rc.size, "cycle size N");
    mixing->add_option("--horizon", rc.horizon, "steps to run (default 10*N)")
        ->check(CLI::NonNegativeNumber);
    mixing->add_option("--epsilon", rc.epsilon, "mixing threshold (default 1/N)");
    mixing->add_option("--restarts", rc.restarts,
                       "also report the warm start after this many restarts");
    add_noise(mixing);
    add_common(mixing, true);

    CLI::App* decay = app.add_subcommand("decay", "negativity series for several noise rates");
    decay->add_option("--steps", rc.steps, "number of walk steps")->check(CLI::PositiveNumber);
    decay->add_option("--noise", rc.noise, "noise target")
        ->check(CLI::IsMember({"coin", "position", "both"}));
    decay->add_option("--p-list", rc.p_list, "comma-separated noise rates");
    add_jobs(decay);
    add_common(decay, true);

    CLI::App* resources = app.add_subcommand("resources", "gate/qubit/ancilla counts");
    resources->add_option("--lattice", rc.lattice, "lattice kind")
        ->check(CLI::IsMember({"line", "cycle"}));
    resources->add_option("--steps", rc.steps, "line walk length T")
        ->check(CLI::PositiveNumber);
    resources->add_option("--size", rc.size, "cycle size N");
    resources->add_option("--mixing-steps", rc.mixing_steps, "cycle run length M(eps)")
        ->check(CLI::PositiveNumber);
    add_noise(resources);
    add_common(resources, false);

    CLI::App* oracle = app.add_subcommand("oracle-check",
                                          "trajectory Monte-Carlo vs exact distribution");
    add_lattice(oracle);
    add_noise(oracle);
    oracle->add_option("--samples", rc.samples, "trajectory count")->check(CLI::PositiveNumber);
    oracle->add_option("--seed", rc.seed, "RNG seed");
    add_jobs(oracle);
    add_common(oracle, true);

    // Config-file injection: tokens go right after the subcommand name so
    // that explicit flags (parsed later, TakeLast) override them.
    std::vector<std::string> tokens = raw_args;
    if (!tokens.empty() && !tokens.front().empty() && tokens.front().front() != '-') {
        std::string config_path;
        for (size_t i = 1; i < tokens.size(); ++i) {
            if (tokens[i] == "--config" && i + 1 < tokens.size()) {
                config_path = tokens[i + 1];
            } else if (tokens[i].rfind("--config=", 0) == 0) {
                config_path = tokens[i].substr(9);
            } else if (tokens[i] == "--config") {
                throw InvalidConfig("--config needs a file path");
            }
        }
        if (!config_path.empty()) {
            CLI::App* sub = app.get_subcommand_no_throw(tokens.front());
            if (sub != nullptr) {
                std::vector<std::string> injected = config_file_tokens(config_path, sub);
                tokens.insert(tokens.begin() + 1, injected.begin(), injected.end());
            }
        }
    }

    std::vector<const char*> argv;
    argv.reserve(tokens.size() + 1);
    argv.push_back("qwalk");
    for (const std::string& t : tokens) argv.push_back(t.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    if (rc.plot && rc.out.empty()) throw InvalidConfig("--plot requires --out");

    if (simulate->parsed()) {
        run_simulate(rc);
    } else if (sweep->parsed()) {
        run_sweep(rc);
    } else if (mixing->parsed()) {
        run_mixing(rc);
    } else if (decay->parsed()) {
        run_decay(rc);
    } else if (resources->parsed()) {
        run_resources(rc);
    } else {
        run_oracle_check(rc);
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        return run_cli(args);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
}

}  // namespace qwalk
