#include "ldpower/estimation.hpp"

#include "ldpower/error.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

namespace ldpower {

using boost::math::digamma;
using boost::math::trigamma;

double inverse_digamma(double y) {
    constexpr double euler_gamma = 0.57721566490153286061;
    double x = y >= -2.22 ? std::exp(y) + 0.5 : -1.0 / (y + euler_gamma);
    for (int i = 0; i < 8; ++i) x -= (digamma(x) - y) / trigamma(x);
    return x;
}

double beta_log_likelihood(std::span<const double> samples, double alpha, double beta) {
    const double log_b = std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
    double ll = 0.0;
    for (double x : samples) ll += (alpha - 1.0) * std::log(x) + (beta - 1.0) * std::log1p(-x) - log_b;
    return ll;
}

BetaFit fit_beta_mle(std::span<const double> samples, const BetaFitOptions& options) {
    std::vector<double> xs;
    xs.reserve(samples.size());
    BetaFit fit;
    for (double x : samples) {
        if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("beta fit: sample outside [0, 1]");
        if (x == 0.0 || x == 1.0) {
            ++fit.excluded;
            continue;
        }
        xs.push_back(x);
    }
    // Summation order must not depend on input order.
    std::sort(xs.begin(), xs.end());
    if (xs.size() < 2 || xs.front() == xs.back())
        throw DegenerateInput("beta fit: need at least two distinct samples strictly inside (0, 1)");
    fit.samples = xs.size();

    const auto n = static_cast<double>(xs.size());
    double mean = 0.0, log_p = 0.0, log_q = 0.0;
    for (double x : xs) {
        mean += x;
        log_p += std::log(x);
        log_q += std::log1p(-x);
    }
    mean /= n;
    log_p /= n;
    log_q /= n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= n;

    const double common = mean * (1.0 - mean) / var - 1.0;
    double alpha = mean * common;
    double beta = (1.0 - mean) * common;
    fit.initial_log_likelihood = beta_log_likelihood(xs, alpha, beta);

    for (fit.iterations = 0; fit.iterations < options.max_iterations;) {
        const double psi_sum = digamma(alpha + beta);
        const double next_alpha = inverse_digamma(psi_sum + log_p);
        const double next_beta = inverse_digamma(psi_sum + log_q);
        const double change = std::max(std::abs(next_alpha - alpha), std::abs(next_beta - beta));
        alpha = next_alpha;
        beta = next_beta;
        ++fit.iterations;
        if (change < options.tolerance) {
            fit.converged = true;
            break;
        }
    }
    fit.alpha = alpha;
    fit.beta = beta;
    fit.log_likelihood = beta_log_likelihood(xs, alpha, beta);
    const double psi_sum = digamma(alpha + beta);
    fit.gradient_norm = n * std::hypot(psi_sum - digamma(alpha) + log_p, psi_sum - digamma(beta) + log_q);
    return fit;
}

double LogisticFit::predict(double weight) const noexcept {
    return 1.0 / (1.0 + std::exp(-(beta0 + beta1 * weight)));
}

namespace {

struct LogisticState {
    double log_likelihood = 0.0;
    std::array<double, 2> score{};
    std::array<double, 3> information{}; // xx00, xx01, xx11
};

// Observations are grouped by weight so the pass costs one evaluation per distinct weight.
struct WeightGroup {
    double x;
    double n;
    double yes;
};

LogisticState evaluate(const std::vector<WeightGroup>& groups, double b0, double b1) {
    LogisticState s;
    for (const auto& g : groups) {
        const double eta = b0 + b1 * g.x;
        const double p = 1.0 / (1.0 + std::exp(-eta));
        // log p = -log(1+e^-eta), log(1-p) = -log(1+e^eta)
        const double log_p = -std::log1p(std::exp(-eta));
        const double log_q = -std::log1p(std::exp(eta));
        s.log_likelihood += g.yes * log_p + (g.n - g.yes) * log_q;
        const double r = g.yes - g.n * p;
        s.score[0] += r;
        s.score[1] += r * g.x;
        const double v = g.n * p * (1.0 - p);
        s.information[0] += v;
        s.information[1] += v * g.x;
        s.information[2] += v * g.x * g.x;
    }
    return s;
}

} // namespace

LogisticFit fit_logistic(std::span<const LogisticObservation> observations, const LogisticFitOptions& options) {
    std::vector<std::pair<std::int64_t, std::array<double, 2>>> tally;
    {
        std::vector<LogisticObservation> sorted(observations.begin(), observations.end());
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& a, const auto& b) { return a.weight < b.weight; });
        for (const auto& o : sorted) {
            if (tally.empty() || tally.back().first != o.weight) tally.push_back({o.weight, {0.0, 0.0}});
            tally.back().second[0] += 1.0;
            tally.back().second[1] += o.yes ? 1.0 : 0.0;
        }
    }
    std::vector<WeightGroup> groups;
    double n = 0.0, yes = 0.0;
    for (const auto& [w, t] : tally) {
        groups.push_back({static_cast<double>(w), t[0], t[1]});
        n += t[0];
        yes += t[1];
    }
    if (yes == 0.0 || yes == n) throw DegenerateInput("logistic fit: only one decision class present (separation)");

    LogisticFit fit;
    fit.observations = static_cast<std::size_t>(n);
    double b0 = std::log(yes / (n - yes));
    double b1 = 0.0;
    auto state = evaluate(groups, b0, b1);
    for (fit.iterations = 0; fit.iterations < options.max_iterations;) {
        const auto& [i00, i01, i11] = state.information;
        const double det = i00 * i11 - i01 * i01;
        if (!(det > 0.0)) break;
        double step0 = (i11 * state.score[0] - i01 * state.score[1]) / det;
        double step1 = (i00 * state.score[1] - i01 * state.score[0]) / det;
        // Halve the Newton step until the likelihood does not drop.
        LogisticState next;
        double scale = 1.0;
        for (int h = 0; h < 30; ++h, scale *= 0.5) {
            next = evaluate(groups, b0 + scale * step0, b1 + scale * step1);
            if (next.log_likelihood >= state.log_likelihood) break;
        }
        const double improvement = next.log_likelihood - state.log_likelihood;
        b0 += scale * step0;
        b1 += scale * step1;
        state = next;
        ++fit.iterations;
        if (improvement < options.tolerance) break;
    }
    fit.beta0 = b0;
    fit.beta1 = b1;
    fit.log_likelihood = state.log_likelihood;
    fit.score_norm = std::max(std::abs(state.score[0]), std::abs(state.score[1])) / n;
    fit.converged = std::isfinite(b0) && std::isfinite(b1) && fit.score_norm < options.score_tolerance;
    return fit;
}

double hurwitz_zeta(double s, double a) {
    if (!(s > 1.0) || !(a > 0.0)) throw InvalidInput("hurwitz_zeta requires s > 1 and a > 0");
    // Euler-Maclaurin: direct sum of N terms, integral tail, Bernoulli corrections.
    constexpr int terms = 12;
    constexpr std::array<double, 6> bernoulli_over_factorial{
        1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0,
        -691.0 / 1307674368000.0};
    double sum = 0.0;
    for (int k = 0; k < terms; ++k) sum += std::pow(a + k, -s);
    const double x = a + terms;
    sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
    double rising = s;            // s (s+1) ... (s+2j-2)
    double power = std::pow(x, -s - 1.0);
    for (std::size_t j = 0; j < bernoulli_over_factorial.size(); ++j) {
        sum += bernoulli_over_factorial[j] * rising * power;
        rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        power /= x * x;
    }
    return sum;
}

double power_law_log_likelihood(std::span<const std::int64_t> samples, double exponent, std::int64_t x_min) {
    double sum_log = 0.0;
    std::size_t n = 0;
    for (auto x : samples) {
        if (x < x_min) continue;
        sum_log += std::log(static_cast<double>(x));
        ++n;
    }
    return -exponent * sum_log - static_cast<double>(n) * std::log(hurwitz_zeta(exponent, static_cast<double>(x_min)));
}

PowerLawFit fit_power_law(std::span<const std::int64_t> samples, std::int64_t x_min) {
    if (x_min < 1) throw InvalidInput("power-law fit: x_min must be positive");
    std::vector<std::int64_t> xs;
    for (auto x : samples) {
        if (x < 1) throw InvalidInput("power-law fit: samples must be positive integers");
        if (x >= x_min) xs.push_back(x);
    }
    if (xs.size() < 10) throw InvalidInput("power-law fit: need at least 10 samples >= x_min");
    std::sort(xs.begin(), xs.end());
    if (xs.front() == xs.back()) throw DegenerateInput("power-law fit: all samples are equal");

    PowerLawFit fit;
    fit.x_min = x_min;
    fit.samples = xs.size();
    const std::size_t mid = xs.size() / 2;
    fit.median = xs.size() % 2 == 1 ? static_cast<double>(xs[mid])
                                    : 0.5 * static_cast<double>(xs[mid - 1] + xs[mid]);

    double sum_log = 0.0;
    double sum_log_shifted = 0.0;
    for (auto x : xs) {
        sum_log += std::log(static_cast<double>(x));
        sum_log_shifted += std::log(static_cast<double>(x) / (static_cast<double>(x_min) - 0.5));
    }
    fit.hill_exponent = 1.0 + static_cast<double>(xs.size()) / sum_log_shifted;

    const auto n = static_cast<double>(xs.size());
    const double a = static_cast<double>(x_min);
    auto negative_ll = [&](double s) { return s * sum_log + n * std::log(hurwitz_zeta(s, a)); };
    const auto [best, value] = boost::math::tools::brent_find_minima(negative_ll, 1.0 + 1e-9, 50.0, 52);
    fit.exponent = best;
    fit.log_likelihood = -value;
    return fit;
}

std::optional<double> gini(std::span<const double> values) {
    std::vector<double> xs(values.begin(), values.end());
    for (double x : xs)
        if (!(x >= 0.0)) throw InvalidInput("gini: values must be non-negative");
    const double total = std::accumulate(xs.begin(), xs.end(), 0.0);
    if (xs.empty() || total <= 0.0) return std::nullopt;
    std::sort(xs.begin(), xs.end());
    // Σ_i Σ_j |x_i - x_j| = 2 Σ_i (2i - n - 1) x_(i), i 1-based over the sorted values.
    const auto n = static_cast<double>(xs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) acc += (2.0 * static_cast<double>(i + 1) - n - 1.0) * xs[i];
    return acc / (n * total);
}

} // namespace ldpower
