#include "ldpower/synth.hpp"

#include "ldpower/error.hpp"
#include "ldpower/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

namespace ldpower {

namespace {

std::string padded(const char* prefix, std::size_t value, std::size_t count) {
    const int width = static_cast<int>(std::to_string(count).size());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, value);
    return buf;
}

// Pareto tail x >= 1 with P(X >= x) = x^-(exponent - 1).
double pareto(SplitMix64& rng, double exponent) {
    const double u = 1.0 - uniform01(rng); // (0, 1]
    return std::pow(u, -1.0 / (exponent - 1.0));
}

std::size_t below(SplitMix64& rng, std::size_t n) {
    return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

enum Phase : std::uint64_t { structure = 1, participation, approvals, votes, delegation };

} // namespace

void validate(const SynthConfig& c) {
    if (c.users < 2 || c.initiatives < 1 || c.areas < 1 || c.days < 1)
        throw InvalidInput("synthetic config: counts must be at least 1 (users at least 2)");
    if (!(c.indegree_exponent > 1.0) || !(c.participation_exponent > 1.0))
        throw InvalidInput("synthetic config: exponents must exceed 1");
    if (!(c.participation_median >= 1.0))
        throw InvalidInput("synthetic config: participation median must be at least 1");
    if (!(c.delegation_fraction >= 0.0 && c.delegation_fraction <= 1.0) ||
        !(c.revocation_probability >= 0.0 && c.revocation_probability <= 1.0))
        throw InvalidInput("synthetic config: fractions must lie in [0, 1]");
    ldpower::validate(c.approval);
}

Dataset generate_synthetic(const SynthConfig& c) {
    validate(c);
    using namespace std::chrono;
    const Timestamp start = sys_days{year{2010} / 8 / 13};
    Dataset d;

    for (std::size_t u = 0; u < c.users; ++u) d.users.push_back(padded("u", u + 1, c.users));
    for (std::size_t a = 0; a < c.areas; ++a) d.areas.push_back({padded("a", a + 1, c.areas), "Area " + std::to_string(a + 1)});

    // Issues group one or two initiatives.
    SplitMix64 srng(stream_seed(c.seed, structure));
    std::vector<Timestamp> issue_day;
    std::vector<std::size_t> issue_of(c.initiatives);
    for (std::size_t i = 0; i < c.initiatives; ++i) {
        if (d.issues.empty() || uniform01(srng) < 0.6) {
            d.issues.push_back({padded("i", d.issues.size() + 1, c.initiatives), d.areas[below(srng, c.areas)].id, c.quorum});
            issue_day.push_back(start + days{static_cast<std::int64_t>(below(srng, static_cast<std::size_t>(c.days)))});
        }
        issue_of[i] = d.issues.size() - 1;
        d.initiatives.push_back({padded("n", i + 1, c.initiatives), d.issues.back().id,
                                 d.users[below(srng, c.users)]});
    }

    // Delegation targets: heavy-tailed attractiveness; edges only point to higher-ranked
    // users, which keeps every scope acyclic.
    SplitMix64 drng(stream_seed(c.seed, delegation));
    std::vector<double> target(c.users);
    for (auto& t : target) t = pareto(drng, c.indegree_exponent);
    std::vector<std::size_t> rank(c.users);
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) { return target[a] > target[b]; });
    std::vector<std::size_t> position(c.users);
    std::vector<double> prefix(c.users + 1, 0.0);
    for (std::size_t r = 0; r < c.users; ++r) {
        position[rank[r]] = r;
        prefix[r + 1] = prefix[r] + target[rank[r]];
    }
    const auto delegators = static_cast<std::size_t>(std::llround(c.delegation_fraction * static_cast<double>(c.users)));
    std::vector<std::size_t> order(c.users);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i + 1 < c.users; ++i) std::swap(order[i], order[i + below(drng, c.users - i)]);
    std::vector<double> incoming(c.users, 0.0);
    const double span_seconds = static_cast<double>(c.days) * 86400.0;
    for (std::size_t k = 0, made = 0; k < c.users && made < delegators; ++k) {
        const std::size_t truster = order[k];
        const std::size_t r = position[truster];
        if (r == 0) continue;
        const double pick = uniform01(drng) * prefix[r];
        const auto it = std::upper_bound(prefix.begin() + 1, prefix.begin() + static_cast<std::ptrdiff_t>(r) + 1, pick);
        const std::size_t trustee = rank[static_cast<std::size_t>(it - prefix.begin() - 1)];
        DelegationEdge e;
        e.truster = d.users[truster];
        e.trustee = d.users[trustee];
        const double s = uniform01(drng);
        if (s < 0.7) {
            e.scope = Scope{ScopeKind::global, ""};
        } else if (s < 0.9) {
            e.scope = Scope{ScopeKind::area, d.areas[below(drng, c.areas)].id};
        } else {
            e.scope = Scope{ScopeKind::issue, d.issues[below(drng, d.issues.size())].id};
        }
        e.valid_from = start + seconds{static_cast<std::int64_t>(uniform01(drng) * span_seconds * 0.5)};
        if (uniform01(drng) < c.revocation_probability)
            e.valid_to = e.valid_from + seconds{1 + static_cast<std::int64_t>(uniform01(drng) * span_seconds * 0.5)};
        incoming[trustee] += 1.0;
        d.delegations.push_back(std::move(e));
        ++made;
    }

    // Approval probabilities.
    SplitMix64 arng(stream_seed(c.seed, approvals));
    std::vector<double> per_initiative(c.initiatives, 0.5);
    std::vector<double> per_user(c.users, 0.5);
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, approval::UniformHomogeneous>) {
                for (auto& p : per_initiative) p = uniform01(arng);
            } else if constexpr (std::is_same_v<M, approval::BetaHomogeneous>) {
                for (auto& p : per_initiative) p = sample_beta(arng, m.alpha, m.beta);
            } else if constexpr (std::is_same_v<M, approval::UniformIndependent>) {
                for (auto& p : per_user) p = uniform01(arng);
            } else if constexpr (std::is_same_v<M, approval::BetaIndependent>) {
                for (auto& p : per_user) p = sample_beta(arng, m.alpha, m.beta);
            } else {
                for (std::size_t u = 0; u < c.users; ++u) per_user[u] = logistic(m.beta0, m.beta1, 1.0 + incoming[u]);
            }
        },
        c.approval);
    const bool homogeneous = std::holds_alternative<approval::UniformHomogeneous>(c.approval) ||
                             std::holds_alternative<approval::BetaHomogeneous>(c.approval);

    // Participation: a power-law draw per user, scaled up for delegates so that heavily
    // trusted users are the most active ones.
    SplitMix64 prng(stream_seed(c.seed, participation));
    // The Pareto median is 2^(1 / (exponent - 1)); rescale it to the configured median.
    const double activity_scale = c.participation_median / std::pow(2.0, 1.0 / (c.participation_exponent - 1.0));
    SplitMix64 vrng(stream_seed(c.seed, votes));
    for (std::size_t u = 0; u < c.users; ++u) {
        const double draw = std::floor(activity_scale * pareto(prng, c.participation_exponent)) * (1.0 + incoming[u]);
        const auto activity = static_cast<std::size_t>(std::min(draw, static_cast<double>(c.initiatives)));
        // Floyd's algorithm for a uniform subset of the initiatives.
        std::unordered_set<std::size_t> chosen;
        std::vector<std::size_t> picks;
        for (std::size_t j = c.initiatives - activity; j < c.initiatives; ++j) {
            const std::size_t t = below(prng, j + 1);
            const std::size_t pick = chosen.insert(t).second ? t : (chosen.insert(j), j);
            picks.push_back(pick);
        }
        std::sort(picks.begin(), picks.end());
        for (auto i : picks) {
            const double p = homogeneous ? per_initiative[i] : per_user[u];
            const bool yes = uniform01(vrng) < p;
            const Timestamp ts = issue_day[issue_of[i]] + seconds{static_cast<std::int64_t>(below(vrng, 86400))};
            d.ballots.push_back({d.initiatives[i].id, d.users[u], yes, ts});
        }
    }
    std::stable_sort(d.ballots.begin(), d.ballots.end(), [](const Ballot& a, const Ballot& b) {
        return std::tie(a.initiative_id, a.voter) < std::tie(b.initiative_id, b.voter);
    });
    return d;
}

} // namespace ldpower
