#include "ldpower/cli.hpp"

#include "ldpower/empirical.hpp"
#include "ldpower/error.hpp"
#include "ldpower/estimation.hpp"
#include "ldpower/evaluation.hpp"
#include "ldpower/io.hpp"
#include "ldpower/netstats.hpp"
#include "ldpower/rng.hpp"
#include "ldpower/synth.hpp"
#include "ldpower/table.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace ldpower {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
    std::uint64_t seed = 1;
    std::uint64_t mc_runs = default_mc_runs;
    std::string format = "csv";
    std::string out_dir;
    bool progress = false;
    std::size_t cap = default_enumeration_cap;
    bool mc_fallback = true;
    unsigned threads = 1;
};

class Emitter {
public:
    Emitter(const GlobalOptions& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

    void log(const std::string& message) const {
        if (g_.progress) err_ << "[ldpower] " << message << '\n';
    }

    void emit(const std::vector<Table>& tables) const {
        if (!g_.out_dir.empty()) {
            fs::create_directories(g_.out_dir);
            for (const auto& t : tables) {
                const fs::path path = fs::path(g_.out_dir) / (t.name + "." + g_.format);
                std::ofstream file(path, std::ios::binary);
                if (!file) throw DataError("cannot write " + path.string());
                if (g_.format == "json") file << to_json(t) << '\n';
                else write_csv(file, t);
                log("wrote " + path.string());
            }
            return;
        }
        if (g_.format == "json") {
            out_ << (tables.size() == 1 ? to_json(tables.front()) : to_json(tables)) << '\n';
            return;
        }
        for (std::size_t i = 0; i < tables.size(); ++i) {
            if (tables.size() > 1) out_ << (i ? "\n" : "") << "# " << tables[i].name << '\n';
            write_csv(out_, tables[i]);
        }
    }

private:
    const GlobalOptions& g_;
    std::ostream& out_;
    std::ostream& err_;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

Cell i64(std::size_t v) { return static_cast<std::int64_t>(v); }

std::vector<IndexModel> parse_models(const std::string& list, const ModelParameters& params) {
    std::vector<IndexModel> models;
    for (const auto& name : split_list(list)) models.push_back(make_index_model(name, params));
    return models;
}

IndexOptions index_options(const GlobalOptions& g) {
    return IndexOptions{g.cap, g.mc_fallback, g.mc_runs, g.seed, g.threads};
}

Table summary_table(const Dataset& d) {
    Table t{"summary", {"entity", "count"}, {}};
    t.add_row({std::string("users"), i64(d.users.size())});
    t.add_row({std::string("areas"), i64(d.areas.size())});
    t.add_row({std::string("issues"), i64(d.issues.size())});
    t.add_row({std::string("initiatives"), i64(d.initiatives.size())});
    t.add_row({std::string("ballots"), i64(d.ballots.size())});
    t.add_row({std::string("delegations"), i64(d.delegations.size())});
    return t;
}

std::vector<Table> run_resolve(const ResolvedDataset& data) {
    Table weights{"weights", {"initiative_id", "issue_id", "voter_id", "decision", "effective_weight", "delegators"}, {}};
    Table summary{"resolution", {"initiative_id", "direct_voters", "yes_weight", "no_weight", "unresolved"}, {}};
    for (const auto& set : data.ballot_sets) {
        for (const auto& v : set.votes()) {
            std::string delegators;
            for (const auto& d : v.delegators) delegators += (delegators.empty() ? "" : ";") + d;
            weights.add_row({set.initiative(), set.issue(), v.voter, std::int64_t{v.yes ? 1 : 0}, v.weight, delegators});
        }
        summary.add_row({set.initiative(), i64(set.votes().size()), set.yes_weight(), set.no_weight(),
                         static_cast<std::int64_t>(set.unresolved)});
    }
    return {weights, summary};
}

void append_indices(Table& t, const std::string& initiative, const VotingGame& game,
                    const std::vector<IndexModel>& models, const IndexOptions& base) {
    for (const auto& model : models) {
        IndexOptions opt = base;
        opt.seed = stream_seed(base.seed, fnv1a(initiative, fnv1a(model.name)));
        const auto r = compute_index(game, model, opt);
        for (std::size_t i = 0; i < game.size(); ++i) {
            t.add_row({initiative, game.voters()[i], game.weight(i), model.name, r.values[i],
                       r.normalised ? Cell{(*r.normalised)[i]} : Cell{},
                       r.estimator == Estimator::monte_carlo ? Cell{r.standard_error[i]} : Cell{},
                       std::string(r.estimator == Estimator::exact ? "exact" : "monte-carlo"),
                       static_cast<std::int64_t>(r.runs)});
        }
    }
}

Table indices_table() {
    return Table{"indices",
                 {"initiative_id", "voter_id", "weight", "model", "value", "normalised", "std_error", "estimator", "runs"},
                 {}};
}

std::vector<Table> run_empirical(const ResolvedDataset& data, const CurveOptions& curve_opts,
                                 std::size_t permutations, std::size_t min_votes, std::uint64_t seed,
                                 const Emitter& emitter) {
    emitter.log("computing power curves");
    const auto curves = power_curves(data, curve_opts);
    const auto low = [&](std::uint64_t count) { return count < curve_opts.min_support; };

    Table power{"power_curve",
                {"weight", "potential_mean", "exercised_mean", "count", "low_support"}, {}};
    for (const auto& [w, bucket] : curves.potential.buckets()) {
        power.add_row({w, bucket.mean(), curves.exercised.mean(w).value_or(0.0),
                       static_cast<std::int64_t>(bucket.count), low(bucket.count)});
    }

    Table learning{"learning_curve",
                   {"k", "direct_approval", "direct_count", "effective_approval", "effective_count", "low_support"}, {}};
    for (const auto& row : curves.learning) {
        learning.add_row({i64(row.k), row.direct.count ? Cell{row.direct.mean()} : Cell{},
                          static_cast<std::int64_t>(row.direct.count),
                          row.effective.count ? Cell{row.effective.mean()} : Cell{},
                          static_cast<std::int64_t>(row.effective.count), low(row.direct.count)});
    }

    Table approval{"approval_by_weight",
                   {"weight", "approval_per_vote", "votes", "approval_per_voter", "voters", "agreement",
                    "agreement_votes", "low_support"},
                   {}};
    for (const auto& row : curves.approval_by_weight) {
        approval.add_row({row.weight, row.per_vote.mean(), static_cast<std::int64_t>(row.per_vote.count),
                          row.per_voter.mean(), static_cast<std::int64_t>(row.per_voter.count),
                          row.agreement.count ? Cell{row.agreement.mean()} : Cell{},
                          static_cast<std::int64_t>(row.agreement.count), low(row.per_vote.count)});
    }

    emitter.log("computing per-voter statistics");
    Table voters{"voters",
                 {"voter_id", "votes", "approval_rate", "agreement_rate", "mean_potential", "mean_exercised"}, {}};
    std::map<VoterId, std::array<double, 2>> power_sums;
    for (const auto& set : data.ballot_sets)
        for (const auto& v : set.votes()) {
            auto& s = power_sums[v.voter];
            s[0] += potential_power(set.yes_weight(), set.no_weight(), set.quorum(), v.weight, v.yes);
            s[1] += exercised_power(set.yes_weight(), set.no_weight(), set.quorum(), v.weight, v.yes);
        }
    for (const auto& [voter, history] : build_histories(data, HistoryKind::direct)) {
        const auto n = static_cast<double>(history.entries.size());
        const auto& s = power_sums[voter];
        voters.add_row({voter, i64(history.entries.size()), optional_cell(user_approval_rate(history, min_votes)),
                        optional_cell(agreement_rate(history, data)), s[0] / n, s[1] / n});
    }

    emitter.log("running reversal analysis and correlation test");
    Table summary{"summary", {"metric", "value"}, {}};
    std::size_t votes = 0;
    for (const auto& set : data.ballot_sets) votes += set.votes().size();
    summary.add_row({std::string("initiatives"), static_cast<double>(data.ballot_sets.size())});
    summary.add_row({std::string("votes"), static_cast<double>(votes)});
    summary.add_row({std::string("unresolved_delegations"), static_cast<double>(data.unresolved)});
    summary.add_row({std::string("reversal_unchanged_fraction"), reversal_analysis(data)});
    summary.add_row({std::string("exercised_to_potential"), optional_cell(curves.exercised_to_potential)});
    if (power_sums.size() >= 3) {
        const auto corr = power_correlation(data, permutations, seed);
        summary.add_row({std::string("spearman_rho"), optional_cell(corr.rho)});
        summary.add_row({std::string("spearman_p_value"), optional_cell(corr.p_value)});
    }
    return {power, learning, approval, voters, summary};
}

std::vector<Table> run_fit(const std::string& kind, const ResolvedDataset* data, const std::string& samples_file,
                           const std::string& unit, const std::string& quantity, std::size_t min_votes,
                           std::int64_t x_min, const Dataset* raw) {
    std::vector<double> reals;
    std::vector<std::int64_t> ints;
    if (!samples_file.empty()) {
        std::ifstream in(samples_file);
        if (!in) throw DataError("cannot open " + samples_file);
        std::string line;
        std::size_t row = 0;
        while (std::getline(in, line)) {
            ++row;
            if (line.empty()) continue;
            try {
                std::size_t used = 0;
                const double v = std::stod(line, &used);
                reals.push_back(v);
                ints.push_back(static_cast<std::int64_t>(std::llround(v)));
            } catch (const std::exception&) {
                throw DataError(samples_file + " row " + std::to_string(row) + ": not a number");
            }
        }
    }

    if (kind == "beta") {
        if (samples_file.empty()) {
            if (unit == "initiative") {
                for (const auto& set : data->ballot_sets) reals.push_back(approval_rate(set));
            } else {
                for (const auto& [voter, h] : build_histories(*data, HistoryKind::direct))
                    if (const auto r = user_approval_rate(h, min_votes)) reals.push_back(*r);
            }
        }
        const auto fit = fit_beta_mle(reals);
        Table t{"beta_fit", {"alpha", "beta", "samples", "excluded", "log_likelihood", "iterations", "converged"}, {}};
        t.add_row({fit.alpha, fit.beta, i64(fit.samples), i64(fit.excluded), fit.log_likelihood,
                   std::int64_t{fit.iterations}, fit.converged});
        return {t};
    }
    if (kind == "logistic") {
        if (!samples_file.empty()) throw InvalidInput("logistic fit reads votes from --data");
        // Users who approved everything are removed before fitting.
        std::map<VoterId, bool> has_no;
        for (const auto& set : data->ballot_sets)
            for (const auto& v : set.votes()) has_no[v.voter] = has_no[v.voter] || !v.yes;
        std::vector<LogisticObservation> obs;
        for (const auto& set : data->ballot_sets)
            for (const auto& v : set.votes())
                if (has_no[v.voter]) obs.push_back({v.weight, v.yes});
        const auto fit = fit_logistic(obs);
        Table t{"logistic_fit",
                {"beta0", "beta1", "observations", "log_likelihood", "iterations", "converged", "p_at_1", "p_at_100"}, {}};
        t.add_row({fit.beta0, fit.beta1, i64(fit.observations), fit.log_likelihood, std::int64_t{fit.iterations},
                   fit.converged, fit.predict(1.0), fit.predict(100.0)});
        return {t};
    }
    if (kind == "powerlaw") {
        if (samples_file.empty()) {
            if (quantity == "weight") {
                for (const auto& set : data->ballot_sets)
                    for (const auto& v : set.votes()) ints.push_back(v.weight);
            } else if (quantity == "activity") {
                for (const auto& [voter, h] : build_histories(*data, HistoryKind::direct))
                    ints.push_back(static_cast<std::int64_t>(h.entries.size()));
            } else if (quantity == "indegree") {
                std::map<VoterId, std::set<VoterId>> in;
                for (const auto& e : raw->delegations) in[e.trustee].insert(e.truster);
                for (const auto& [voter, from] : in) ints.push_back(static_cast<std::int64_t>(from.size()));
            } else {
                throw InvalidInput("unknown quantity '" + quantity + "'");
            }
        }
        const auto fit = fit_power_law(ints, x_min);
        Table t{"powerlaw_fit", {"exponent", "hill_exponent", "x_min", "samples", "median", "log_likelihood"}, {}};
        t.add_row({fit.exponent, fit.hill_exponent, fit.x_min, i64(fit.samples), fit.median, fit.log_likelihood});
        return {t};
    }
    throw InvalidInput("unknown fit '" + kind + "'");
}

std::vector<Table> run_netstats(const Dataset& d, GiniDomain domain) {
    Table t{"netstats",
            {"date", "nodes", "edges", "added", "removed", "mean_indegree", "indegree_gini", "reciprocity", "clustering",
             "largest_component"},
            {}};
    for (const auto& row : stats_time_series(d.delegations, domain)) {
        t.add_row({format_date(row.date), i64(row.nodes), i64(row.edges), i64(row.added), i64(row.removed),
                   row.mean_indegree, optional_cell(row.indegree_gini), optional_cell(row.reciprocity),
                   optional_cell(row.clustering), i64(row.largest_component)});
    }
    return {t};
}

std::vector<Table> run_evaluate(const ResolvedDataset& data, const std::vector<IndexModel>& models,
                                const BenchmarkOptions& options) {
    const auto report = benchmark(data, models, options);
    Table t{"evaluation",
            {"model", "squared_error", "buckets_compared", "buckets_skipped", "log2_likelihood", "perplexity",
             "perplexity_per_observation", "clamped", "exact_games", "mc_games"},
            {}};
    for (const auto& m : report.models) {
        t.add_row({m.model, m.global.squared_error, i64(m.global.compared), i64(m.global.skipped), m.log2_likelihood,
                   m.perplexity, m.perplexity_per_observation, static_cast<std::int64_t>(m.clamped),
                   i64(m.exact_games), i64(m.monte_carlo_games)});
    }
    Table meta{"evaluation_meta", {"initiatives", "observations", "fingerprint", "mc_runs", "seed"}, {}};
    meta.add_row({i64(report.initiatives), i64(report.observations), report.fingerprint,
                  static_cast<std::int64_t>(report.mc_runs), std::to_string(report.seed)});

    std::vector<std::string> columns{"weight", "measured", "count"};
    for (const auto& m : report.models) columns.push_back(m.model);
    Table curves{"power_curves", columns, {}};
    for (const auto& [w, bucket] : report.measured.buckets()) {
        std::vector<Cell> row{w, bucket.mean(), static_cast<std::int64_t>(bucket.count)};
        for (const auto& m : report.models) row.push_back(optional_cell(m.predicted.mean(w)));
        curves.add_row(std::move(row));
    }
    return {t, meta, curves};
}

} // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Voting power analysis for delegative democracy platforms", "ldpower"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--mc-runs", g.mc_runs, "Monte Carlo runs per game")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--out", g.out_dir, "Write one file per table into this directory");
    app.add_flag("--progress", g.progress, "Log progress to standard error");
    app.add_option("--cap", g.cap, "Largest game enumerated exactly")->capture_default_str();
    app.add_flag("--mc-fallback,!--no-mc-fallback", g.mc_fallback,
                 "Use Monte Carlo for games above the cap (default on)");
    app.add_option("--threads", g.threads, "Worker threads for Monte Carlo")->capture_default_str()->check(CLI::PositiveNumber);

    std::string data_dir;
    ModelParameters params;
    std::string models = "banzhaf,shapley,beta,regression,beta2";
    auto add_params = [&](CLI::App* sub, bool with_models = true) {
        sub->add_option("--alpha", params.alpha, "Beta alpha")->capture_default_str();
        sub->add_option("--beta", params.beta, "Beta beta")->capture_default_str();
        sub->add_option("--beta0", params.beta0, "Logistic intercept")->capture_default_str();
        sub->add_option("--beta1", params.beta1, "Logistic slope per unit weight")->capture_default_str();
        if (with_models)
            sub->add_option("--models", models, "Comma-separated index models")->capture_default_str();
    };

    auto* validate_cmd = app.add_subcommand("validate", "Load and check a dataset");
    validate_cmd->add_option("--data", data_dir, "Dataset directory")->required();

    auto* resolve_cmd = app.add_subcommand("resolve", "Effective weights per initiative");
    resolve_cmd->add_option("--data", data_dir, "Dataset directory")->required();

    std::string weights_text;
    std::string quorum_text = "1/2";
    auto* indices_cmd = app.add_subcommand("indices", "Power indices per initiative or for one game");
    auto* data_opt = indices_cmd->add_option("--data", data_dir, "Dataset directory");
    auto* weights_opt = indices_cmd->add_option("--weights", weights_text, "Comma-separated voter weights");
    indices_cmd->add_option("--quorum", quorum_text, "Quorum a/b for --weights")->capture_default_str();
    data_opt->excludes(weights_opt);
    add_params(indices_cmd);

    CurveOptions curve_opts;
    std::size_t permutations = 10'000;
    std::size_t min_votes = default_min_votes;
    auto* empirical_cmd = app.add_subcommand("empirical", "Measured power, approval, agreement, reversal");
    empirical_cmd->add_option("--data", data_dir, "Dataset directory")->required();
    empirical_cmd->add_option("--max-weight", curve_opts.max_weight, "Largest weight bucket")->capture_default_str();
    empirical_cmd->add_option("--min-support", curve_opts.min_support, "Low-support threshold")->capture_default_str();
    empirical_cmd->add_flag("--exclude-authors", curve_opts.exclude_authors, "Ignore authors' votes on own initiatives");
    empirical_cmd->add_option("--permutations", permutations, "Permutations for the correlation test")->capture_default_str();
    empirical_cmd->add_option("--min-votes", min_votes, "Minimum votes for per-user approval")->capture_default_str();

    std::string fit_kind;
    std::string samples_file;
    std::string unit = "user";
    std::string quantity = "weight";
    std::int64_t x_min = 1;
    auto* fit_cmd = app.add_subcommand("fit", "Fit beta, logistic or power-law models");
    fit_cmd->add_option("kind", fit_kind, "beta | logistic | powerlaw")->required()->check(CLI::IsMember({"beta", "logistic", "powerlaw"}));
    auto* fit_data = fit_cmd->add_option("--data", data_dir, "Dataset directory");
    auto* fit_samples = fit_cmd->add_option("--samples", samples_file, "File with one sample per line");
    fit_data->excludes(fit_samples);
    fit_cmd->add_option("--unit", unit, "Approval rates per user or per initiative")->check(CLI::IsMember({"user", "initiative"}))->capture_default_str();
    fit_cmd->add_option("--quantity", quantity, "weight | activity | indegree")->check(CLI::IsMember({"weight", "activity", "indegree"}))->capture_default_str();
    fit_cmd->add_option("--min-votes", min_votes, "Minimum votes per user")->capture_default_str();
    fit_cmd->add_option("--x-min", x_min, "Power-law lower cutoff")->capture_default_str();

    std::string gini_domain = "all";
    auto* netstats_cmd = app.add_subcommand("netstats", "Daily delegation network statistics");
    netstats_cmd->add_option("--data", data_dir, "Dataset directory")->required();
    netstats_cmd->add_option("--gini-domain", gini_domain, "all | receivers")->check(CLI::IsMember({"all", "receivers"}))->capture_default_str();

    std::int64_t eval_max_weight = 100;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Squared error and perplexity of power indices");
    evaluate_cmd->add_option("--data", data_dir, "Dataset directory")->required();
    evaluate_cmd->add_option("--max-weight", eval_max_weight, "Largest weight bucket")->capture_default_str();
    add_params(evaluate_cmd);

    SynthConfig synth;
    std::string synth_model = "beta2";
    std::string synth_quorum = "2/3";
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset into --out");
    synth_cmd->add_option("--users", synth.users)->capture_default_str();
    synth_cmd->add_option("--initiatives", synth.initiatives)->capture_default_str();
    synth_cmd->add_option("--areas", synth.areas)->capture_default_str();
    synth_cmd->add_option("--quorum", synth_quorum)->capture_default_str();
    synth_cmd->add_option("--model", synth_model, "Approval model: uniform, uniform-homogeneous, beta, beta2, regression")->capture_default_str();
    synth_cmd->add_option("--indegree-exponent", synth.indegree_exponent)->capture_default_str();
    synth_cmd->add_option("--participation-exponent", synth.participation_exponent)->capture_default_str();
    synth_cmd->add_option("--delegation-fraction", synth.delegation_fraction)->capture_default_str();
    synth_cmd->add_option("--days", synth.days)->capture_default_str();
    add_params(synth_cmd, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    const Emitter emitter(g, out, err);
    try {
        auto load = [&] {
            emitter.log("loading " + data_dir);
            return load_dataset(data_dir);
        };
        auto resolve = [&](const Dataset& d) {
            emitter.log("resolving delegations");
            return resolve_dataset(d);
        };

        if (*validate_cmd) {
            emitter.emit({summary_table(load())});
        } else if (*resolve_cmd) {
            emitter.emit(run_resolve(resolve(load())));
        } else if (*indices_cmd) {
            const auto list = parse_models(models, params);
            Table t = indices_table();
            if (!weights_text.empty()) {
                std::vector<std::int64_t> weights;
                for (const auto& w : split_list(weights_text)) {
                    try {
                        weights.push_back(std::stoll(w));
                    } catch (const std::exception&) {
                        throw InvalidInput("bad weight '" + w + "'");
                    }
                }
                const auto game = VotingGame::from_weights(weights, Quorum::parse(quorum_text));
                append_indices(t, "game", game, list, index_options(g));
            } else if (!data_dir.empty()) {
                const auto data = resolve(load());
                for (const auto& set : data.ballot_sets) {
                    std::vector<VoterId> ids;
                    std::vector<std::int64_t> weights;
                    for (const auto& v : set.votes()) {
                        ids.push_back(v.voter);
                        weights.push_back(v.weight);
                    }
                    append_indices(t, set.initiative(), VotingGame(ids, weights, set.quorum()), list, index_options(g));
                }
            } else {
                err << "error: indices needs --data or --weights\n";
                return exit_usage;
            }
            emitter.emit({t});
        } else if (*empirical_cmd) {
            emitter.emit(run_empirical(resolve(load()), curve_opts, permutations, min_votes, g.seed, emitter));
        } else if (*fit_cmd) {
            if (data_dir.empty() && samples_file.empty()) {
                err << "error: fit needs --data or --samples\n";
                return exit_usage;
            }
            std::optional<Dataset> raw;
            std::optional<ResolvedDataset> data;
            if (!data_dir.empty()) {
                raw = load();
                data = resolve(*raw);
            }
            emitter.emit(run_fit(fit_kind, data ? &*data : nullptr, samples_file, unit, quantity, min_votes, x_min,
                                 raw ? &*raw : nullptr));
        } else if (*netstats_cmd) {
            emitter.emit(run_netstats(load(), gini_domain == "all" ? GiniDomain::all_nodes : GiniDomain::receivers_only));
        } else if (*evaluate_cmd) {
            const auto data = resolve(load());
            BenchmarkOptions opt;
            opt.index = index_options(g);
            opt.max_weight = eval_max_weight;
            emitter.log("benchmarking " + models);
            emitter.emit(run_evaluate(data, parse_models(models, params), opt));
        } else if (*synth_cmd) {
            if (g.out_dir.empty()) {
                err << "error: synth needs --out DIR\n";
                return exit_usage;
            }
            synth.seed = g.seed;
            synth.quorum = Quorum::parse(synth_quorum);
            const auto model = make_index_model(synth_model, params);
            if (!std::holds_alternative<ApprovalModel>(model.kind))
                throw InvalidInput("synth needs an approval model, not '" + synth_model + "'");
            synth.approval = std::get<ApprovalModel>(model.kind);
            emitter.log("generating synthetic dataset");
            const auto d = generate_synthetic(synth);
            write_dataset(d, g.out_dir);
            GlobalOptions to_stdout = g;
            to_stdout.out_dir.clear();
            Emitter(to_stdout, out, err).emit({summary_table(d)});
        }
    } catch (const ResourceLimit& e) {
        err << "error: " << e.what() << '\n';
        return exit_resource;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }
    return exit_ok;
}

} // namespace ldpower
