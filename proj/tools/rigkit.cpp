// rigkit: threshold analysis, seeded simulation, and exact oracles for
// induced subgraph counts in random intersection graphs G(n, m, p).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rigkit/json_io.hpp"
#include "rigkit/oracle.hpp"

namespace {

using namespace rigkit;

struct GlobalOptions {
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out;
};

void write_output(const GlobalOptions& global, const std::string& text) {
    if (global.out.empty() || global.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(global.out, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file: " + global.out);
    file << text;
}

Rational parse_alpha(const std::string& text) {
    auto alpha = parse_rational(text);
    if (!alpha || *alpha <= 0)
        throw std::invalid_argument("alpha must be a positive rational like 3/4");
    return *alpha;
}

std::vector<std::int64_t> parse_grid(const std::string& text) {
    std::vector<std::int64_t> grid;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        grid.push_back(std::stoll(item));
        if (grid.back() < 1) throw std::invalid_argument("n grid entries must be positive");
    }
    if (grid.empty()) throw std::invalid_argument("empty n grid");
    return grid;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Json config_json(const GlobalOptions& global, const char* command) {
    Json j;
    j["schema"] = "rigkit/1";
    j["command"] = command;
    j["seed"] = global.seed;
    j["threads"] = global.threads;
    return j;
}

// ---------------------------------------------------------------- analyze --

std::string render_report_table(const ThresholdReport& report, double c) {
    std::ostringstream out;
    out << "pattern: h=" << report.h << " e=" << report.e << " |aut|=" << report.aut << "\n";
    out << "alpha = " << rational_to_string(report.alpha) << ", c = " << c << "\n";
    out << "eta0 = " << rational_to_string(report.eta0)
        << "   (p = c * n^-eta0 is the appearance threshold)\n";
    out << "lambda0 = " << format_double(lambda0_from_report(report, c)) << "\n";
    out << "proper covers: ";
    if (report.cover_family_size)
        out << *report.cover_family_size;
    else
        out << "(not counted)";
    out << ", |C0| = " << report.c0.size() << "\n";
    out << "H0 strictly alpha-balanced: " << (report.strictly_alpha_balanced ? "yes" : "no")
        << "\n";
    for (const auto& verdict : report.c0) {
        out << "  C0 cover " << verdict.cover.to_string() << "  sum|C|=" << verdict.sum_sizes
            << "  eta1=" << rational_to_string(verdict.eta1) << "  " << verdict_name(verdict.verdict);
        if (verdict.witness) {
            out << "  witness S={";
            for (int v = 0; v < kMaxPatternVertices; ++v)
                if ((*verdict.witness >> v) & 1u) out << (v + 1);
            out << "}";
        }
        if (verdict.boundary_fired) out << "  [eta2 boundary case fired]";
        out << "\n";
    }
    out << "regime: mp^2 -> 0 " << (report.regime.mp2_vanishes ? "holds" : "FAILS")
        << (report.regime.asymptotically_edgeless ? ", asymptotically edgeless" : "")
        << (report.regime.asymptotically_complete ? ", asymptotically complete" : "") << "\n";
    out << "G(n,p^): strictly balanced " << (report.er_strictly_balanced ? "yes" : "no")
        << ", kappa = " << (report.kappa ? rational_to_string(*report.kappa) : "undefined (h=2)")
        << "\n";
    return out.str();
}

int cmd_analyze(const GlobalOptions& global, const PatternGraph& pattern, const Rational& alpha,
                double c, std::uint64_t scan_bits, const std::string& format) {
    AnalyzeOptions options;
    options.scan.max_subsets = std::uint64_t{1} << scan_bits;
    options.threads = global.threads;
    ThresholdReport report = classify_balance(pattern, alpha, options);

    if (format == "json") {
        Json j = config_json(global, "analyze");
        j["config"]["alpha"] = rational_to_string(alpha);
        j["config"]["c"] = c;
        j["report"] = to_json(report, c);
        write_output(global, j.dump(2) + "\n");
        // keep the human-readable table on stdout next to a JSON file
        if (!global.out.empty() && global.out != "-")
            std::cout << render_report_table(report, c);
        return 0;
    }
    write_output(global, render_report_table(report, c));
    return 0;
}

// --------------------------------------------------------------- simulate --

int cmd_simulate(const GlobalOptions& global, const PatternGraph& pattern,
                 const ExperimentConfig& config, const std::string& format, bool assert_trend,
                 bool per_replicate) {
    ExperimentResult result = run_experiment(pattern, config);

    bool trend_ok = true;
    for (std::size_t i = 0; i + 1 < result.per_n.size(); ++i) {
        const auto& prev = result.per_n[i];
        const auto& next = result.per_n[i + 1];
        if (next.tv.value > prev.ci.upper) trend_ok = false;
        double prev_ratio = prev.mean > 0 ? prev.y1_mean / prev.mean : 0.0;
        double next_ratio = next.mean > 0 ? next.y1_mean / next.mean : 0.0;
        if (next_ratio > prev_ratio + 1e-12) trend_ok = false;
    }

    if (format == "json") {
        Json j = config_json(global, "simulate");
        j["config"]["alpha"] = rational_to_string(config.alpha);
        j["config"]["c"] = config.c;
        j["config"]["n_grid"] = config.n_grid;
        j["config"]["replicates"] = config.replicates;
        j["config"]["bootstrap_resamples"] = config.bootstrap_resamples;
        j["config"]["ci_level"] = config.ci_level;
        if (config.p_override) j["config"]["p_override"] = *config.p_override;
        j["config"]["force"] = config.force;
        j["eta0"] = to_json(result.eta0);
        j["lambda0"] = result.lambda0;
        Json per_n = Json::array();
        for (const auto& s : result.per_n) per_n.push_back(to_json(s, true));
        j["per_n"] = per_n;
        j["tv_trend_ok"] = trend_ok;
        if (per_replicate) {
            Json rows = Json::array();
            for (const auto& row : result.rows) {
                Json r;
                r["n"] = row.n;
                r["replicate"] = row.replicate;
                r["x"] = row.counts.x;
                r["y0"] = row.counts.y0;
                r["y1"] = row.counts.y1;
                Json orbits = Json::array();
                for (const auto& [cover, count] : row.counts.per_orbit)
                    orbits.push_back({{"cover", to_json(cover)}, {"count", count}});
                r["orbits"] = orbits;
                rows.push_back(r);
            }
            j["replicates"] = rows;
        }
        write_output(global, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "n,replicates,m,p,lambda0,tv,tv_truncation,tv_bias_scale,ci_lower,ci_upper,"
               "mean,variance,y0_mean,y1_mean,y1_positive\n";
        for (const auto& s : result.per_n) {
            out << s.n << "," << s.replicates << "," << format_double(s.m_real) << ","
                << format_double(s.p) << "," << format_double(s.lambda0) << ","
                << format_double(s.tv.value) << "," << format_double(s.tv.truncation) << ","
                << format_double(s.tv_bias_scale) << "," << format_double(s.ci.lower) << ","
                << format_double(s.ci.upper) << "," << format_double(s.mean) << ","
                << format_double(s.variance) << "," << format_double(s.y0_mean) << ","
                << format_double(s.y1_mean) << "," << s.y1_positive << "\n";
        }
        if (per_replicate) {
            out << "n,replicate,x,y0,y1,orbits\n";
            for (const auto& row : result.rows) {
                out << row.n << "," << row.replicate << "," << row.counts.x << ","
                    << row.counts.y0 << "," << row.counts.y1 << ",\"";
                bool first = true;
                for (const auto& [cover, count] : row.counts.per_orbit) {
                    if (!first) out << ";";
                    out << cover.to_string() << ":" << count;
                    first = false;
                }
                out << "\"\n";
            }
        }
        write_output(global, out.str());
    }
    if (assert_trend && !trend_ok) {
        std::cerr << "simulate: TV/Y1 trend assertion failed\n";
        return 4;
    }
    return 0;
}

// ----------------------------------------------------------------- oracle --

int cmd_oracle(const GlobalOptions& global, const PatternGraph& pattern,
               const std::string& covers_spec, const std::optional<Rational>& alpha, double c,
               const std::vector<std::int64_t>& n_grid, std::optional<std::int64_t> m_opt,
               std::optional<double> p_opt, std::optional<std::int64_t> dist_n,
               double mp2_warn_threshold) {
    Json j = config_json(global, "oracle");
    j["config"]["covers"] = covers_spec;
    j["config"]["c"] = c;
    if (alpha) j["config"]["alpha"] = rational_to_string(*alpha);

    // Select covers: C0 at alpha, the whole family, or one index into it.
    std::vector<CliqueCover> covers;
    std::optional<Eta0Result> scan;
    if (alpha) scan = eta0(pattern, *alpha);
    std::string spec = covers_spec;
    if (spec == "auto") spec = alpha ? "c0" : "all";
    if (spec == "c0") {
        if (!scan) throw std::invalid_argument("oracle: --covers c0 requires --alpha");
        covers = scan->c0;
    } else {
        std::vector<CliqueCover> family = enumerate_proper_covers(pattern);
        if (spec == "all") {
            covers = std::move(family);
        } else {
            std::size_t index = std::stoull(spec);
            if (index >= family.size())
                throw std::invalid_argument("oracle: cover index out of range (family has " +
                                            std::to_string(family.size()) + " covers)");
            covers.push_back(family[index]);
        }
    }

    Json evaluations = Json::array();
    auto evaluate_at = [&](const ModelParams& params) {
        Json row;
        row["n"] = params.n;
        row["m"] = params.m_real;
        row["p"] = params.p;
        row["mp2"] = params.mp2();
        if (params.mp2() >= mp2_warn_threshold)
            row["warning"] = "mp^2 is not small; the asymptotic predictors are out of regime";
        Json per_cover = Json::array();
        for (const auto& cover : covers) {
            Json entry;
            entry["cover"] = to_json(cover);
            double exact = exact_pi(pattern, cover, params.m_int64(), params.p);
            double predict = pi_predict(cover, params);
            double order = pi_order(cover, params);
            entry["exact_pi"] = exact;
            entry["pi_predict"] = predict;
            entry["pi_order"] = order;
            entry["pi_predict_above"] = pi_predict_above(pattern, cover, params);
            entry["ratio_exact_to_predict"] = predict > 0 ? exact / predict : 0.0;
            per_cover.push_back(entry);
        }
        row["covers"] = per_cover;
        evaluations.push_back(row);
    };

    if (!n_grid.empty()) {
        if (!alpha) throw std::invalid_argument("oracle: --n-grid requires --alpha");
        for (std::int64_t n : n_grid) {
            ModelParams params =
                p_opt ? ModelParams::with_explicit_p(n, *alpha, *p_opt)
                      : ModelParams::from_threshold(n, *alpha, c, scan->eta0);
            if (m_opt) {
                params.m = BigInt(*m_opt);
                params.m_real = static_cast<double>(*m_opt);
            }
            evaluate_at(params);
        }
    } else if (m_opt && p_opt) {
        ModelParams params;
        params.n = dist_n.value_or(0);
        params.alpha = alpha.value_or(Rational(1));
        params.m = BigInt(*m_opt);
        params.m_real = static_cast<double>(*m_opt);
        params.p = *p_opt;
        evaluate_at(params);
    } else {
        throw std::invalid_argument("oracle: need either --n-grid with --alpha, or --m and --p");
    }
    j["evaluations"] = evaluations;

    if (dist_n) {
        if (!m_opt || !p_opt)
            throw std::invalid_argument("oracle: --distribution-n requires --m and --p");
        std::vector<double> pmf = exact_distribution(pattern, *dist_n, *m_opt, *p_opt);
        double mass = 0.0, mean = 0.0;
        for (std::size_t k = 0; k < pmf.size(); ++k) {
            mass += pmf[k];
            mean += static_cast<double>(k) * pmf[k];
        }
        Json d;
        d["n"] = *dist_n;
        d["m"] = *m_opt;
        d["p"] = *p_opt;
        d["pmf"] = pmf;
        d["total_mass"] = mass;
        d["mean"] = mean;
        d["exact_mean"] = exact_mean(pattern, *dist_n, *m_opt, *p_opt);
        TvResult tv = tv_to_poisson(pmf, mean);
        d["tv_to_poisson_mean"] = to_json(tv);
        // Partition identity: the cover-family split of the fixed-copy event.
        double family_sum = 0.0;
        for (const auto& cover : enumerate_proper_covers(pattern))
            family_sum += exact_pi(pattern, cover, *m_opt, *p_opt);
        d["copy_induced_probability"] = {
            {"sum_over_covers", family_sum},
            {"direct", exact_copy_induced_probability(pattern, *m_opt, *p_opt)}};
        j["distribution"] = d;
    }

    write_output(global, j.dump(2) + "\n");
    return 0;
}

// ----------------------------------------------------------------- sample --

int cmd_sample(const GlobalOptions& global, std::optional<PatternGraph> pattern,
               std::int64_t n, const std::optional<Rational>& alpha,
               std::optional<std::int64_t> m_opt, std::optional<double> p_opt, double c,
               std::uint64_t replicates, const std::string& emit, const std::string& model,
               const std::string& phat_mode) {
    Rational a = alpha.value_or(Rational(1));
    std::int64_t m = 0;
    double p = 0.0;
    if (p_opt) {
        p = *p_opt;
    } else {
        if (!pattern)
            throw std::invalid_argument("sample: --c mode needs --pattern to derive eta0");
        Eta0Result scan = eta0(*pattern, a);
        p = c * std::exp(-to_double(scan.eta0) * std::log(static_cast<double>(n)));
    }
    if (m_opt)
        m = *m_opt;
    else
        m = ModelParams::with_explicit_p(n, a, std::min(p, 1.0)).m_int64();
    if (p > 1.0) p = 1.0;

    std::ostringstream out;
    if (emit == "edges") {
        for (std::uint64_t r = 0; r < replicates; ++r) {
            SeedSpec seed{global.seed, r};
            HostGraph host =
                model == "gnp"
                    ? sample_gnp(n, p_hat(m, p, phat_mode == "exact" ? PHatMode::Exact : PHatMode::Paper),
                                 seed)
                    : project_graph(sample_incidence(n, m, p, seed));
            if (replicates > 1) out << "# replicate " << r << "\n";
            out << host.to_edge_list_text();
        }
    } else {
        out << "replicate,n,m,p,incidences,edges\n";
        for (std::uint64_t r = 0; r < replicates; ++r) {
            SeedSpec seed{global.seed, r};
            if (model == "gnp") {
                HostGraph host = sample_gnp(
                    n, p_hat(m, p, phat_mode == "exact" ? PHatMode::Exact : PHatMode::Paper), seed);
                out << r << "," << n << "," << m << "," << format_double(p) << ",,"
                    << host.edge_count() << "\n";
            } else {
                IncidenceSample sample = sample_incidence(n, m, p, seed);
                HostGraph host = project_graph(sample);
                out << r << "," << n << "," << m << "," << format_double(p) << ","
                    << sample.total_incidences() << "," << host.edge_count() << "\n";
            }
        }
    }
    write_output(global, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random intersection graph toolkit: thresholds, simulation, exact oracles"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOptions global;
    app.add_option("--seed", global.seed, "master seed")
        ->envname("RIGKIT_MASTER_SEED")
        ->capture_default_str();
    app.add_option("--threads", global.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    app.add_option("--out", global.out, "output path (default: stdout)");

    std::string pattern_path;
    bool graph6 = false;
    std::string alpha_text;
    double c = 1.0;

    auto add_pattern_options = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--pattern", pattern_path, "pattern file (edge list)");
        if (required) opt->required();
        cmd->add_flag("--g6", graph6, "pattern file is in graph6 format");
    };

    // analyze
    auto* analyze = app.add_subcommand("analyze", "thresholds, C0, balance, lambda0");
    add_pattern_options(analyze, true);
    analyze->add_option("--alpha", alpha_text, "exponent alpha as a rational a/b")->required();
    analyze->add_option("--c", c, "threshold constant in p = c n^-eta0")->capture_default_str();
    std::uint64_t scan_bits = 26;
    analyze->add_option("--cover-budget-bits", scan_bits,
                        "scan at most 2^bits cover candidates")
        ->capture_default_str();
    std::string analyze_format = "text";
    analyze->add_option("--format", analyze_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo vs Poisson(lambda0)");
    add_pattern_options(simulate, true);
    simulate->add_option("--alpha", alpha_text, "exponent alpha as a rational a/b")->required();
    simulate->add_option("--c", c, "threshold constant")->capture_default_str();
    std::string grid_text = "100,200,300";
    simulate->add_option("--n-grid", grid_text, "comma-separated n values")->capture_default_str();
    std::uint64_t replicates = 2000;
    simulate->add_option("--replicates", replicates, "replicates per n")->capture_default_str();
    std::optional<double> p_override;
    simulate->add_option("--p", p_override, "override p (otherwise c n^-eta0)");
    int bootstrap_resamples = 1000;
    simulate->add_option("--bootstrap", bootstrap_resamples, "bootstrap resamples")
        ->capture_default_str();
    double ci_level = 0.95;
    simulate->add_option("--level", ci_level, "CI level")->capture_default_str();
    bool force = false;
    simulate->add_flag("--force", force, "run even if mp^2 does not vanish");
    bool assert_trend = false;
    simulate->add_flag("--assert-trend", assert_trend,
                       "exit 4 unless TV and Y1/X are non-increasing over the grid");
    bool per_replicate = false;
    simulate->add_flag("--per-replicate", per_replicate, "emit per-replicate rows");
    std::string sim_format = "csv";
    simulate->add_option("--format", sim_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact probabilities vs asymptotic predictors");
    add_pattern_options(oracle, true);
    oracle->add_option("--alpha", alpha_text, "exponent alpha as a rational a/b");
    oracle->add_option("--c", c, "threshold constant")->capture_default_str();
    std::string oracle_grid;
    oracle->add_option("--n-grid", oracle_grid, "comma-separated n values");
    std::optional<std::int64_t> oracle_m;
    oracle->add_option("--m", oracle_m, "explicit object count m");
    std::optional<double> oracle_p;
    oracle->add_option("--p", oracle_p, "explicit selection probability p");
    std::string covers_spec = "auto";
    oracle->add_option("--covers", covers_spec, "auto|c0|all|<index into the enumerated family>")
        ->capture_default_str();
    std::optional<std::int64_t> dist_n;
    oracle->add_option("--distribution-n", dist_n,
                       "emit the exact pmf of X on [n] (needs --m and --p)");
    double mp2_warn = kDefaultMp2SmallThreshold;
    oracle->add_option("--mp2-warn-threshold", mp2_warn, "warn when mp^2 exceeds this")
        ->capture_default_str();

    // sample
    auto* sample = app.add_subcommand("sample", "draw G(n,m,p) or G(n,p^) replicates");
    add_pattern_options(sample, false);
    std::int64_t sample_n = 100;
    sample->add_option("--n", sample_n, "vertices")->required();
    sample->add_option("--alpha", alpha_text, "exponent alpha (m = floor(n^alpha))");
    std::optional<std::int64_t> sample_m;
    sample->add_option("--m", sample_m, "explicit object count");
    std::optional<double> sample_p;
    sample->add_option("--p", sample_p, "explicit p");
    sample->add_option("--c", c, "threshold constant (p = c n^-eta0, needs --pattern)")
        ->capture_default_str();
    std::uint64_t sample_replicates = 1;
    sample->add_option("--replicates", sample_replicates, "replicate count")
        ->capture_default_str();
    std::string emit = "summary";
    sample->add_option("--emit", emit, "edges|summary")
        ->check(CLI::IsMember({"edges", "summary"}))
        ->capture_default_str();
    std::string model = "rig";
    sample->add_option("--model", model, "rig|gnp")
        ->check(CLI::IsMember({"rig", "gnp"}))
        ->capture_default_str();
    std::string phat_mode = "paper";
    sample->add_option("--phat-mode", phat_mode, "paper (mp^2) | exact (1-(1-p^2)^m)")
        ->check(CLI::IsMember({"paper", "exact"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        std::optional<PatternGraph> pattern;
        if (!pattern_path.empty()) pattern = pattern_from_file(pattern_path, graph6);
        std::optional<Rational> alpha;
        if (!alpha_text.empty()) alpha = parse_alpha(alpha_text);

        if (app.got_subcommand(analyze))
            return cmd_analyze(global, *pattern, *alpha, c, scan_bits, analyze_format);
        if (app.got_subcommand(simulate)) {
            ExperimentConfig config;
            config.alpha = *alpha;
            config.c = c;
            config.n_grid = parse_grid(grid_text);
            config.replicates = replicates;
            config.master_seed = global.seed;
            config.p_override = p_override;
            config.bootstrap_resamples = bootstrap_resamples;
            config.ci_level = ci_level;
            config.threads = global.threads;
            config.force = force;
            config.keep_replicates = per_replicate;
            return cmd_simulate(global, *pattern, config, sim_format, assert_trend, per_replicate);
        }
        if (app.got_subcommand(oracle)) {
            std::vector<std::int64_t> grid;
            if (!oracle_grid.empty()) grid = parse_grid(oracle_grid);
            return cmd_oracle(global, *pattern, covers_spec, alpha, c, grid, oracle_m, oracle_p,
                              dist_n, mp2_warn);
        }
        if (app.got_subcommand(sample))
            return cmd_sample(global, pattern, sample_n, alpha, sample_m, sample_p, c,
                              sample_replicates, emit, model, phat_mode);
    } catch (const rigkit::BudgetError& e) {
        std::cerr << "budget refused: " << e.what() << "\n";
        return 3;
    } catch (const rigkit::RegimeError& e) {
        std::cerr << "regime check failed: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
