#include "ldpower/indices.hpp"

#include "ldpower/error.hpp"
#include "ldpower/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace ldpower {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

void require_beta_params(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw InvalidInput("beta parameters must be positive and finite");
}

// Sums weight(size) * count over swing coalitions of every voter.
template <class SizeWeight>
IndexResult from_profile(const VotingGame& game, std::span<const SwingCounts> profile, SizeWeight&& weight_of_size) {
    const std::size_t n = game.size();
    if (profile.size() != n) throw InvalidInput("swing profile does not match the game");
    std::vector<double> size_weight(n + 1);
    for (std::size_t s = 0; s <= n; ++s) size_weight[s] = weight_of_size(s);
    IndexResult out;
    out.values.resize(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t s = 1; s <= n; ++s)
            if (profile[i].by_size[s] != 0)
                sum += static_cast<double>(profile[i].by_size[s]) * size_weight[s];
        out.values[i] = sum;
    }
    return out;
}

} // namespace

void validate(const ApprovalModel& model) {
    std::visit(overloaded{
                   [](const approval::BetaIndependent& m) { require_beta_params(m.alpha, m.beta); },
                   [](const approval::BetaHomogeneous& m) { require_beta_params(m.alpha, m.beta); },
                   [](const approval::Logistic& m) {
                       if (!std::isfinite(m.beta0) || !std::isfinite(m.beta1))
                           throw InvalidInput("logistic parameters must be finite");
                   },
                   [](const auto&) {},
               },
               model);
}

std::string describe(const ApprovalModel& model) {
    return std::visit(
        overloaded{
            [](const approval::UniformIndependent&) { return std::string("uniform-independent"); },
            [](const approval::UniformHomogeneous&) { return std::string("uniform-homogeneous"); },
            [](const approval::BetaIndependent& m) {
                return "beta-independent(" + std::to_string(m.alpha) + "," + std::to_string(m.beta) + ")";
            },
            [](const approval::BetaHomogeneous& m) {
                return "beta-homogeneous(" + std::to_string(m.alpha) + "," + std::to_string(m.beta) + ")";
            },
            [](const approval::Logistic& m) {
                return "logistic(" + std::to_string(m.beta0) + "," + std::to_string(m.beta1) + ")";
            },
        },
        model);
}

double logistic(double beta0, double beta1, double x) noexcept {
    return 1.0 / (1.0 + std::exp(-(beta0 + beta1 * x)));
}

IndexResult banzhaf_from_profile(const VotingGame& game, std::span<const SwingCounts> profile) {
    const double denom = std::ldexp(1.0, static_cast<int>(game.size()) - 1);
    auto out = from_profile(game, profile, [&](std::size_t) { return 1.0 / denom; });
    const double total = std::accumulate(out.values.begin(), out.values.end(), 0.0);
    std::vector<double> normalised(out.values.size(), 0.0);
    if (total > 0.0)
        std::transform(out.values.begin(), out.values.end(), normalised.begin(),
                       [&](double v) { return v / total; });
    out.normalised = std::move(normalised);
    return out;
}

IndexResult shapley_from_profile(const VotingGame& game, std::span<const SwingCounts> profile) {
    const std::size_t n = game.size();
    // (s-1)!(n-s)!/n! = 1 / (n * C(n-1, s-1))
    return from_profile(game, profile, [n](std::size_t s) {
        if (s == 0) return 0.0;
        double binom = 1.0;
        const std::size_t k = std::min(s - 1, n - s);
        for (std::size_t j = 1; j <= k; ++j)
            binom = binom * static_cast<double>(n - 1 - k + j) / static_cast<double>(j);
        return 1.0 / (static_cast<double>(n) * binom);
    });
}

IndexResult beta_index_from_profile(const VotingGame& game, std::span<const SwingCounts> profile, double alpha,
                                    double beta) {
    require_beta_params(alpha, beta);
    const double mean = alpha / (alpha + beta);
    const double log_p = std::log(mean);
    const double log_q = std::log1p(-mean);
    const auto n = static_cast<double>(game.size());
    return from_profile(game, profile, [&](std::size_t s) {
        const auto k = static_cast<double>(s);
        return std::exp(k * log_p + (n - k) * log_q);
    });
}

IndexResult beta2_index_from_profile(const VotingGame& game, std::span<const SwingCounts> profile, double alpha,
                                     double beta) {
    require_beta_params(alpha, beta);
    const auto n = static_cast<double>(game.size());
    const double base = log_beta(alpha, beta);
    return from_profile(game, profile, [&](std::size_t s) {
        const auto k = static_cast<double>(s);
        return std::exp(log_beta(alpha + k, beta + n - k) - base);
    });
}

IndexResult banzhaf_exact(const VotingGame& game, std::size_t cap) {
    return banzhaf_from_profile(game, swing_profile(game, cap));
}

IndexResult shapley_exact(const VotingGame& game, std::size_t cap) {
    return shapley_from_profile(game, swing_profile(game, cap));
}

IndexResult beta_index_exact(const VotingGame& game, double alpha, double beta, std::size_t cap) {
    require_beta_params(alpha, beta);
    return beta_index_from_profile(game, swing_profile(game, cap), alpha, beta);
}

IndexResult beta2_index_exact(const VotingGame& game, double alpha, double beta, std::size_t cap) {
    require_beta_params(alpha, beta);
    return beta2_index_from_profile(game, swing_profile(game, cap), alpha, beta);
}

IndexResult regression_index_exact(const VotingGame& game, double beta0, double beta1, std::size_t cap) {
    validate(approval::Logistic{beta0, beta1});
    require_enumerable(game, cap);
    const std::size_t n = game.size();
    const auto w = game.weights();
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = logistic(beta0, beta1, static_cast<double>(w[j]));
    const std::int64_t threshold = game.threshold();
    std::vector<std::int64_t> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + w[i];

    // Same pruned walk as for_each_winning_coalition, carrying the coalition's
    // probability along the path instead of recomputing it at every leaf.
    IndexResult out;
    out.values.assign(n, 0.0);
    auto recurse = [&](auto&& self, std::size_t k, std::uint64_t mask, std::int64_t sum, double prob) -> void {
        if (sum + suffix[k] < threshold) return;
        if (k == n) {
            const std::int64_t slack = sum - threshold;
            for (std::uint64_t m = mask; m != 0; m &= m - 1) {
                const auto i = static_cast<std::size_t>(__builtin_ctzll(m));
                if (w[i] > slack) out.values[i] += prob;
            }
            return;
        }
        self(self, k + 1, mask, sum, prob * (1.0 - p[k]));
        self(self, k + 1, mask | (std::uint64_t{1} << k), sum + w[k], prob * p[k]);
    };
    recurse(recurse, 0, 0, 0, 1.0);
    return out;
}

IndexResult index_exact(const VotingGame& game, const ApprovalModel& model, std::size_t cap) {
    return std::visit(
        overloaded{
            [&](const approval::UniformIndependent&) { return beta_index_exact(game, 1.0, 1.0, cap); },
            [&](const approval::UniformHomogeneous&) { return beta2_index_exact(game, 1.0, 1.0, cap); },
            [&](const approval::BetaIndependent& m) { return beta_index_exact(game, m.alpha, m.beta, cap); },
            [&](const approval::BetaHomogeneous& m) { return beta2_index_exact(game, m.alpha, m.beta, cap); },
            [&](const approval::Logistic& m) { return regression_index_exact(game, m.beta0, m.beta1, cap); },
        },
        model);
}

IndexResult index_monte_carlo(const VotingGame& game, const ApprovalModel& model,
                              const MonteCarloOptions& options) {
    validate(model);
    if (options.runs == 0) throw InvalidInput("Monte Carlo estimator needs at least one run");

    const std::size_t n = game.size();
    const auto w = game.weights();
    const std::int64_t threshold = game.threshold();

    // Fixed per-voter probabilities for the logistic model.
    std::vector<double> fixed_p;
    if (const auto* m = std::get_if<approval::Logistic>(&model)) {
        fixed_p.resize(n);
        for (std::size_t j = 0; j < n; ++j) fixed_p[j] = logistic(m->beta0, m->beta1, static_cast<double>(w[j]));
    }

    auto simulate = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& counts) {
        std::vector<char> yes(n);
        for (std::uint64_t run = begin; run < end; ++run) {
            SplitMix64 rng(stream_seed(options.seed, run));
            double shared = 0.5;
            if (std::holds_alternative<approval::UniformHomogeneous>(model)) {
                shared = uniform01(rng);
            } else if (const auto* m = std::get_if<approval::BetaHomogeneous>(&model)) {
                shared = sample_beta(rng, m->alpha, m->beta);
            }
            std::int64_t yes_weight = 0;
            for (std::size_t j = 0; j < n; ++j) {
                double p = shared;
                if (!fixed_p.empty()) {
                    p = fixed_p[j];
                } else if (std::holds_alternative<approval::UniformIndependent>(model)) {
                    p = uniform01(rng);
                } else if (const auto* m = std::get_if<approval::BetaIndependent>(&model)) {
                    p = sample_beta(rng, m->alpha, m->beta);
                }
                yes[j] = uniform01(rng) < p;
                if (yes[j]) yes_weight += w[j];
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (options.event == SwingEvent::joint) {
                    if (yes[i] && yes_weight >= threshold && yes_weight - w[i] < threshold) ++counts[i];
                } else {
                    const std::int64_t others = yes_weight - (yes[i] ? w[i] : 0);
                    if (others < threshold && others + w[i] >= threshold) ++counts[i];
                }
            }
        }
    };

    std::vector<std::uint64_t> counts(n, 0);
    const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, 256));
    if (threads == 1 || options.runs < 2 * threads) {
        simulate(0, options.runs, counts);
    } else {
        std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(n, 0));
        {
            std::vector<std::jthread> pool;
            const std::uint64_t chunk = options.runs / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const std::uint64_t begin = t * chunk;
                const std::uint64_t end = t + 1 == threads ? options.runs : begin + chunk;
                pool.emplace_back([&, t, begin, end] { simulate(begin, end, partial[t]); });
            }
        }
        for (const auto& part : partial)
            for (std::size_t i = 0; i < n; ++i) counts[i] += part[i];
    }

    IndexResult out;
    out.estimator = Estimator::monte_carlo;
    out.runs = options.runs;
    out.seed = options.seed;
    out.values.resize(n);
    out.standard_error.resize(n);
    const auto runs = static_cast<double>(options.runs);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = static_cast<double>(counts[i]) / runs;
        out.values[i] = v;
        out.standard_error[i] = std::sqrt(v * (1.0 - v) / runs);
    }
    return out;
}

} // namespace ldpower
