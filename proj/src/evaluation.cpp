#include "ldpower/evaluation.hpp"

#include "ldpower/error.hpp"
#include "ldpower/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ldpower {

IndexModel make_index_model(const std::string& name, const ModelParameters& p) {
    if (name == "banzhaf") return {name, ClassicalIndex::banzhaf};
    if (name == "shapley") return {name, ClassicalIndex::shapley};
    if (name == "beta") return {name, ApprovalModel{approval::BetaIndependent{p.alpha, p.beta}}};
    if (name == "beta2") return {name, ApprovalModel{approval::BetaHomogeneous{p.alpha, p.beta}}};
    if (name == "regression") return {name, ApprovalModel{approval::Logistic{p.beta0, p.beta1}}};
    if (name == "uniform") return {name, ApprovalModel{approval::UniformIndependent{}}};
    if (name == "uniform-homogeneous") return {name, ApprovalModel{approval::UniformHomogeneous{}}};
    throw InvalidInput("unknown index model '" + name + "'");
}

namespace {

bool enumerable(const VotingGame& game, std::size_t cap) { return game.size() <= cap && game.size() <= 62; }

bool needs_coalitions(const IndexModel& model) {
    const auto* m = std::get_if<ApprovalModel>(&model.kind);
    return m && std::holds_alternative<approval::Logistic>(*m);
}

// Exact index of a game within the cap, reusing one swing profile for every size-based index.
IndexResult exact_from_profile(const VotingGame& game, const IndexModel& model,
                               std::span<const SwingCounts> profile, std::size_t cap) {
    if (const auto* c = std::get_if<ClassicalIndex>(&model.kind))
        return *c == ClassicalIndex::banzhaf ? banzhaf_from_profile(game, profile) : shapley_from_profile(game, profile);
    const auto& m = std::get<ApprovalModel>(model.kind);
    if (std::holds_alternative<approval::UniformIndependent>(m)) return beta_index_from_profile(game, profile, 1, 1);
    if (std::holds_alternative<approval::UniformHomogeneous>(m)) return beta2_index_from_profile(game, profile, 1, 1);
    if (const auto* b = std::get_if<approval::BetaIndependent>(&m))
        return beta_index_from_profile(game, profile, b->alpha, b->beta);
    if (const auto* b = std::get_if<approval::BetaHomogeneous>(&m))
        return beta2_index_from_profile(game, profile, b->alpha, b->beta);
    return index_exact(game, m, cap);
}

} // namespace

IndexResult compute_index(const VotingGame& game, const IndexModel& model, const IndexOptions& options) {
    if (enumerable(game, options.cap)) {
        if (const auto* c = std::get_if<ClassicalIndex>(&model.kind))
            return *c == ClassicalIndex::banzhaf ? banzhaf_exact(game, options.cap) : shapley_exact(game, options.cap);
        return index_exact(game, std::get<ApprovalModel>(model.kind), options.cap);
    }
    if (!options.mc_fallback) require_enumerable(game, options.cap);

    MonteCarloOptions mc{options.mc_runs, options.seed, SwingEvent::joint, options.threads};
    if (const auto* c = std::get_if<ClassicalIndex>(&model.kind)) {
        // Raw Banzhaf: swing given the voter joins, others vote yes with probability 1/2.
        // Shapley: the same with one shared p ~ U(0,1).
        mc.event = SwingEvent::conditional;
        if (*c == ClassicalIndex::banzhaf) return index_monte_carlo(game, approval::UniformIndependent{}, mc);
        return index_monte_carlo(game, approval::UniformHomogeneous{}, mc);
    }
    return index_monte_carlo(game, std::get<ApprovalModel>(model.kind), mc);
}

CurveComparison compare_curves(const PowerCurve& predicted, const PowerCurve& measured) {
    CurveComparison out;
    const std::int64_t top = std::max(predicted.max_weight(), measured.max_weight());
    for (std::int64_t w = 1; w <= top; ++w) {
        const auto p = predicted.mean(w);
        const auto m = measured.mean(w);
        if (p && m) {
            out.squared_error += (*p - *m) * (*p - *m);
            ++out.compared;
        } else if (p || m) {
            ++out.skipped;
        }
    }
    if (out.compared == 0 && out.skipped > 0)
        throw InvalidInput("power curves have disjoint weight support");
    return out;
}

double squared_error(const PowerCurve& predicted, const PowerCurve& measured) {
    return compare_curves(predicted, measured).squared_error;
}

LikelihoodResult log_likelihood(std::span<const PowerObservation> observations, double epsilon) {
    LikelihoodResult out;
    out.observations = observations.size();
    for (const auto& o : observations) {
        double p = o.index;
        if (p < epsilon || p > 1.0 - epsilon) {
            // Counted only when the clamp rescues a contradicted certainty.
            if ((p < epsilon && o.potential) || (p > 1.0 - epsilon && !o.potential)) ++out.clamped;
            p = std::clamp(p, epsilon, 1.0 - epsilon);
        }
        out.log2_likelihood += std::log2(o.potential ? p : 1.0 - p);
    }
    return out;
}

double perplexity(double log2_likelihood, std::size_t count) {
    if (count == 0) throw InvalidInput("perplexity needs at least one initiative");
    return std::exp2(-log2_likelihood / static_cast<double>(count));
}

std::string fingerprint(const ResolvedDataset& data) {
    std::vector<const BallotSet*> sets;
    for (const auto& s : data.ballot_sets) sets.push_back(&s);
    std::sort(sets.begin(), sets.end(), [](auto* a, auto* b) { return a->initiative() < b->initiative(); });
    std::uint64_t h = fnv1a("");
    for (const auto* s : sets) {
        h = fnv1a(s->initiative(), h);
        h = fnv1a(s->quorum().to_string(), h);
        for (const auto& v : s->votes()) {
            h = fnv1a(v.voter, h);
            h = fnv1a(std::to_string(v.weight) + (v.yes ? "y" : "n"), h);
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

EvaluationReport benchmark(const ResolvedDataset& data, std::span<const IndexModel> models,
                           const BenchmarkOptions& options) {
    EvaluationReport report;
    report.mc_runs = options.index.mc_runs;
    report.seed = options.index.seed;
    report.fingerprint = fingerprint(data);
    report.measured = PowerCurve(options.max_weight);
    if (models.empty()) return report;

    std::vector<const BallotSet*> sets;
    for (const auto& s : data.ballot_sets) sets.push_back(&s);
    std::sort(sets.begin(), sets.end(), [](auto* a, auto* b) { return a->initiative() < b->initiative(); });
    report.initiatives = sets.size();

    std::vector<std::vector<PowerObservation>> observations(models.size());
    for (std::size_t m = 0; m < models.size(); ++m) {
        report.models.push_back(ModelScore{models[m].name, {}, 0.0, 1.0, 1.0, 0, 0, 0, PowerCurve(options.max_weight)});
    }

    for (const auto* set : sets) {
        std::vector<VoterId> ids;
        std::vector<std::int64_t> weights;
        std::vector<bool> gamma;
        for (const auto& v : set->votes()) {
            ids.push_back(v.voter);
            weights.push_back(v.weight);
            const int gp = potential_power(set->yes_weight(), set->no_weight(), set->quorum(), v.weight, v.yes);
            gamma.push_back(gp == 1);
            report.measured.add(v.weight, gp);
        }
        report.observations += ids.size();
        const VotingGame game(ids, weights, set->quorum());
        std::vector<SwingCounts> profile;
        const bool exact = enumerable(game, options.index.cap);
        if (exact && !std::all_of(models.begin(), models.end(), needs_coalitions))
            profile = swing_profile(game, options.index.cap);
        for (std::size_t m = 0; m < models.size(); ++m) {
            IndexOptions index = options.index;
            index.seed = stream_seed(options.index.seed, fnv1a(set->initiative(), fnv1a(models[m].name)));
            const auto result = exact ? exact_from_profile(game, models[m], profile, options.index.cap)
                                      : compute_index(game, models[m], index);
            auto& score = report.models[m];
            (result.estimator == Estimator::exact ? score.exact_games : score.monte_carlo_games) += 1;
            for (std::size_t i = 0; i < ids.size(); ++i) {
                score.predicted.add(weights[i], result.values[i]);
                observations[m].push_back({result.values[i], gamma[i]});
            }
        }
    }

    for (std::size_t m = 0; m < models.size(); ++m) {
        auto& score = report.models[m];
        score.global = compare_curves(score.predicted, report.measured);
        const auto ll = log_likelihood(observations[m], options.epsilon);
        score.log2_likelihood = ll.log2_likelihood;
        score.clamped = ll.clamped;
        if (!sets.empty()) score.perplexity = perplexity(ll.log2_likelihood, sets.size());
        if (ll.observations > 0) score.perplexity_per_observation = perplexity(ll.log2_likelihood, ll.observations);
    }
    return report;
}

} // namespace ldpower
