#include "ldpower/empirical.hpp"

#include "ldpower/error.hpp"
#include "ldpower/rng.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

namespace ldpower {

BallotSet::BallotSet(std::string initiative, std::string issue, Quorum quorum, std::vector<Vote> votes)
    : initiative_(std::move(initiative)), issue_(std::move(issue)), quorum_(quorum), votes_(std::move(votes)) {
    for (std::size_t i = 0; i < votes_.size(); ++i) {
        const auto& v = votes_[i];
        if (v.weight < 1) throw InvalidInput("vote of '" + v.voter + "' has weight below 1");
        if (!index_.emplace(v.voter, i).second)
            throw InvalidInput("voter '" + v.voter + "' votes twice on initiative '" + initiative_ + "'");
        if (v.yes) {
            yes_weight_ += v.weight;
            ++yes_count_;
        } else {
            no_weight_ += v.weight;
        }
    }
}

const Vote& BallotSet::vote_of(const VoterId& voter) const {
    const auto it = index_.find(voter);
    if (it == index_.end())
        throw InvalidInput("voter '" + voter + "' did not vote on initiative '" + initiative_ + "'");
    return votes_[it->second];
}

const BallotSet* ResolvedDataset::find(const std::string& initiative) const {
    const auto it = std::lower_bound(ballot_sets.begin(), ballot_sets.end(), initiative,
                                     [](const BallotSet& b, const std::string& id) { return b.initiative() < id; });
    return it != ballot_sets.end() && it->initiative() == initiative ? &*it : nullptr;
}

ResolvedDataset resolve_dataset(const Dataset& dataset) {
    validate(dataset);
    std::unordered_map<std::string, const Issue*> issues;
    for (const auto& i : dataset.issues) issues[i.id] = &i;
    std::map<std::string, std::vector<const Ballot*>> by_initiative;
    for (const auto& b : dataset.ballots) by_initiative[b.initiative_id].push_back(&b);
    const std::set<VoterId> eligible(dataset.users.begin(), dataset.users.end());

    std::vector<const Initiative*> initiatives;
    for (const auto& ini : dataset.initiatives) initiatives.push_back(&ini);
    std::sort(initiatives.begin(), initiatives.end(),
              [](const Initiative* a, const Initiative* b) { return a->id < b->id; });

    ResolvedDataset out;
    for (const auto* ini : initiatives) {
        const auto it = by_initiative.find(ini->id);
        if (it == by_initiative.end()) continue;
        const auto& ballots = it->second;
        const Issue& issue = *issues.at(ini->issue_id);

        Timestamp close = ballots.front()->ts;
        std::set<VoterId> direct;
        for (const auto* b : ballots) {
            close = std::max(close, b->ts);
            direct.insert(b->voter);
        }
        const auto snapshot = delegation_graph_at(dataset.delegations, close);
        const IssueRef ref{issue.id, issue.area_id};
        auto weights = resolve_weights(snapshot, ref, direct, eligible);

        std::vector<Vote> votes;
        votes.reserve(ballots.size());
        for (const auto* b : ballots)
            votes.push_back(Vote{b->voter, b->yes, weights.weight.at(b->voter), b->ts,
                                 std::move(weights.absorbed[b->voter])});
        std::sort(votes.begin(), votes.end(), [](const Vote& a, const Vote& b) { return a.voter < b.voter; });
        out.unresolved += weights.unresolved.size();
        BallotSet set(ini->id, issue.id, issue.quorum, std::move(votes));
        set.author = ini->author;
        set.area = issue.area_id;
        set.unresolved = weights.unresolved.size();
        out.ballot_sets.push_back(std::move(set));
    }
    return out;
}

Outcome outcome(std::int64_t yes_weight, std::int64_t no_weight, const Quorum& quorum) {
    if (yes_weight + no_weight <= 0) throw InvalidInput("outcome of an empty ballot set");
    return quorum.exceeded_by(yes_weight, yes_weight + no_weight) ? Outcome::accepted : Outcome::rejected;
}

Outcome outcome(const BallotSet& ballots) {
    return outcome(ballots.yes_weight(), ballots.no_weight(), ballots.quorum());
}

int potential_power(std::int64_t yes_weight, std::int64_t no_weight, const Quorum& quorum,
                    std::int64_t weight, bool yes) {
    using i128 = __int128;
    const i128 num = quorum.num();
    const i128 den = quorum.den();
    // Everything scaled by the quorum denominator.
    const i128 missing = num * (yes_weight + no_weight) - den * yes_weight + den * weight * (yes ? 1 : 0);
    return (den * weight > missing && missing > 0) ? 1 : 0;
}

int potential_power(const BallotSet& ballots, const VoterId& voter) {
    const auto& v = ballots.vote_of(voter);
    return potential_power(ballots.yes_weight(), ballots.no_weight(), ballots.quorum(), v.weight, v.yes);
}

int exercised_power(std::int64_t yes_weight, std::int64_t no_weight, const Quorum& quorum,
                    std::int64_t weight, bool yes) {
    const bool actual = outcome(yes_weight, no_weight, quorum) == Outcome::accepted;
    const std::int64_t rest_total = yes_weight + no_weight - weight;
    const std::int64_t rest_yes = yes_weight - (yes ? weight : 0);
    const bool without = rest_total > 0 && quorum.exceeded_by(rest_yes, rest_total);
    return actual != without ? 1 : 0;
}

int exercised_power(const BallotSet& ballots, const VoterId& voter) {
    const auto& v = ballots.vote_of(voter);
    return exercised_power(ballots.yes_weight(), ballots.no_weight(), ballots.quorum(), v.weight, v.yes);
}

std::map<VoterId, VoterHistory> build_histories(const ResolvedDataset& data, HistoryKind kind) {
    std::map<VoterId, VoterHistory> out;
    for (const auto& set : data.ballot_sets) {
        for (const auto& v : set.votes()) {
            out[v.voter].entries.push_back({set.issue(), set.initiative(), v.yes, v.weight, v.ts, true});
            if (kind == HistoryKind::effective)
                for (const auto& d : v.delegators)
                    out[d].entries.push_back({set.issue(), set.initiative(), v.yes, 1, v.ts, false});
        }
    }
    for (auto& [voter, history] : out) {
        history.voter = voter;
        std::sort(history.entries.begin(), history.entries.end(), [](const HistoryEntry& a, const HistoryEntry& b) {
            return std::tie(a.ts, a.initiative) < std::tie(b.ts, b.initiative);
        });
    }
    return out;
}

double approval_rate(const VoterHistory& history) {
    if (history.entries.empty()) throw InvalidInput("approval rate of an empty history");
    const auto yes = std::count_if(history.entries.begin(), history.entries.end(),
                                   [](const HistoryEntry& e) { return e.yes; });
    return static_cast<double>(yes) / static_cast<double>(history.entries.size());
}

double approval_rate(const BallotSet& ballots) {
    if (ballots.votes().empty()) throw InvalidInput("approval rate of an empty ballot set");
    return static_cast<double>(ballots.yes_count()) / static_cast<double>(ballots.votes().size());
}

std::optional<double> user_approval_rate(const VoterHistory& history, std::size_t min_votes) {
    if (history.entries.size() < min_votes || history.entries.empty()) return std::nullopt;
    return approval_rate(history);
}

std::optional<bool> agrees_with_majority(const BallotSet& ballots, const VoterId& voter) {
    const auto& v = ballots.vote_of(voter);
    const std::size_t yes_others = ballots.yes_count() - (v.yes ? 1 : 0);
    const std::size_t no_others = ballots.no_count() - (v.yes ? 0 : 1);
    if (yes_others + no_others == 0) return std::nullopt;
    return v.yes ? yes_others > no_others : no_others > yes_others;
}

std::optional<double> agreement_rate(const VoterHistory& history, const ResolvedDataset& data) {
    std::size_t defined = 0;
    std::size_t agree = 0;
    for (const auto& e : history.entries) {
        if (!e.direct) continue;
        const auto* set = data.find(e.initiative);
        if (set == nullptr) continue;
        if (const auto a = agrees_with_majority(*set, history.voter)) {
            ++defined;
            if (*a) ++agree;
        }
    }
    if (defined == 0) return std::nullopt;
    return static_cast<double>(agree) / static_cast<double>(defined);
}

double reversal_analysis(const ResolvedDataset& data) {
    if (data.ballot_sets.empty()) return 1.0;
    std::size_t unchanged = 0;
    for (const auto& set : data.ballot_sets) {
        const auto direct = outcome(static_cast<std::int64_t>(set.yes_count()),
                                    static_cast<std::int64_t>(set.no_count()), set.quorum());
        if (direct == outcome(set)) ++unchanged;
    }
    return static_cast<double>(unchanged) / static_cast<double>(data.ballot_sets.size());
}

PowerCurves power_curves(const ResolvedDataset& data, const CurveOptions& options) {
    PowerCurves out{PowerCurve(options.max_weight), PowerCurve(options.max_weight), {}, {}, std::nullopt,
                    options.min_support};
    const auto skip = [&](const BallotSet& set, const Vote& v) {
        return options.exclude_authors && set.author && *set.author == v.voter;
    };

    std::uint64_t potential_total = 0;
    std::uint64_t exercised_total = 0;
    std::map<std::int64_t, ApprovalByWeightRow> by_weight;
    std::map<std::pair<std::int64_t, VoterId>, PowerCurve::Bucket> per_voter;
    for (const auto& set : data.ballot_sets) {
        for (const auto& v : set.votes()) {
            if (skip(set, v)) continue;
            const int gp = potential_power(set.yes_weight(), set.no_weight(), set.quorum(), v.weight, v.yes);
            const int ge = exercised_power(set.yes_weight(), set.no_weight(), set.quorum(), v.weight, v.yes);
            potential_total += gp;
            exercised_total += ge;
            out.potential.add(v.weight, gp);
            out.exercised.add(v.weight, ge);
            if (v.weight > options.max_weight) continue;
            auto& row = by_weight[v.weight];
            row.weight = v.weight;
            row.per_vote.sum += v.yes ? 1.0 : 0.0;
            ++row.per_vote.count;
            auto& pv = per_voter[{v.weight, v.voter}];
            pv.sum += v.yes ? 1.0 : 0.0;
            ++pv.count;
            if (const auto a = agrees_with_majority(set, v.voter)) {
                row.agreement.sum += *a ? 1.0 : 0.0;
                ++row.agreement.count;
            }
        }
    }
    for (const auto& [key, bucket] : per_voter) {
        auto& row = by_weight[key.first];
        row.per_voter.sum += bucket.mean();
        ++row.per_voter.count;
    }
    for (auto& [w, row] : by_weight) out.approval_by_weight.push_back(row);
    if (potential_total > 0)
        out.exercised_to_potential = static_cast<double>(exercised_total) / static_cast<double>(potential_total);

    // Learning curves: the k-th distinct issue of each voter.
    const auto accumulate = [&](HistoryKind kind, auto member) {
        for (const auto& [voter, history] : build_histories(data, kind)) {
            std::map<std::string, std::size_t> issue_rank;
            for (const auto& e : history.entries) {
                const auto [it, inserted] = issue_rank.emplace(e.issue, issue_rank.size() + 1);
                const std::size_t k = it->second;
                if (out.learning.size() < k) out.learning.resize(k);
                auto& row = out.learning[k - 1];
                row.k = k;
                auto& bucket = row.*member;
                bucket.sum += e.yes ? 1.0 : 0.0;
                ++bucket.count;
            }
        }
    };
    accumulate(HistoryKind::direct, &LearningRow::direct);
    accumulate(HistoryKind::effective, &LearningRow::effective);
    return out;
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

} // namespace

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidInput("spearman: series differ in length");
    if (x.size() < 3) throw InvalidInput("spearman: need at least 3 samples");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

CorrelationResult spearman_test(std::span<const double> x, std::span<const double> y,
                                std::size_t permutations, std::uint64_t seed) {
    CorrelationResult out;
    out.samples = x.size();
    out.rho = spearman(x, y);
    if (!out.rho || permutations == 0) return out;
    const auto rx = average_ranks(x);
    auto ry = average_ranks(y);
    SplitMix64 rng(stream_seed(seed, 0));
    std::size_t extreme = 0;
    const double observed = std::abs(*out.rho) - 1e-12;
    for (std::size_t p = 0; p < permutations; ++p) {
        for (std::size_t i = ry.size() - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(rng() % (i + 1));
            std::swap(ry[i], ry[j]);
        }
        const auto r = pearson(rx, ry);
        if (r && std::abs(*r) >= observed) ++extreme;
    }
    out.p_value = static_cast<double>(1 + extreme) / static_cast<double>(1 + permutations);
    return out;
}

CorrelationResult power_correlation(const ResolvedDataset& data, std::size_t permutations, std::uint64_t seed) {
    std::map<VoterId, std::array<double, 3>> sums; // potential, exercised, count
    for (const auto& set : data.ballot_sets)
        for (const auto& v : set.votes()) {
            auto& s = sums[v.voter];
            s[0] += potential_power(set.yes_weight(), set.no_weight(), set.quorum(), v.weight, v.yes);
            s[1] += exercised_power(set.yes_weight(), set.no_weight(), set.quorum(), v.weight, v.yes);
            s[2] += 1.0;
        }
    std::vector<double> potential;
    std::vector<double> exercised;
    for (const auto& [voter, s] : sums) {
        potential.push_back(s[0] / s[2]);
        exercised.push_back(s[1] / s[2]);
    }
    return spearman_test(potential, exercised, permutations, seed);
}

} // namespace ldpower
