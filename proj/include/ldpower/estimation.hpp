#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace ldpower {

struct BetaFit {
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t samples = 0;  // used in the fit
    std::size_t excluded = 0; // exact 0 or 1 values dropped
    double log_likelihood = 0.0;
    double initial_log_likelihood = 0.0; // at the moment-matching start
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct BetaFitOptions {
    double tolerance = 1e-8;
    int max_iterations = 500;
};

// Maximum likelihood Beta(alpha, beta) by Minka's digamma fixed point, started from
// moment matching. Values of exactly 0 or 1 are excluded.
BetaFit fit_beta_mle(std::span<const double> samples, const BetaFitOptions& options = {});

double beta_log_likelihood(std::span<const double> samples, double alpha, double beta);

// Inverse of the digamma function by Newton iteration.
double inverse_digamma(double y);

struct LogisticObservation {
    std::int64_t weight = 1;
    bool yes = false;
};

struct LogisticFit {
    double beta0 = 0.0;
    double beta1 = 0.0;
    std::size_t observations = 0;
    double log_likelihood = 0.0;
    double score_norm = 0.0; // max |score| / observations at the optimum
    int iterations = 0;
    bool converged = false;

    double predict(double weight) const noexcept;
};

struct LogisticFitOptions {
    double tolerance = 1e-10; // log-likelihood improvement
    int max_iterations = 100;
    double score_tolerance = 1e-6;
};

// P(yes | weight) = 1 / (1 + exp(-(beta0 + beta1 weight))) by iteratively reweighted
// least squares. Throws DegenerateInput when only one decision occurs.
LogisticFit fit_logistic(std::span<const LogisticObservation> observations,
                         const LogisticFitOptions& options = {});

struct PowerLawFit {
    double exponent = 0.0;      // discrete maximum likelihood
    double hill_exponent = 0.0; // 1 + n / Σ ln(x / (x_min - 1/2))
    std::int64_t x_min = 1;
    std::size_t samples = 0;
    double median = 0.0;
    double log_likelihood = 0.0;
};

// Discrete power law p(x) = x^-a / ζ(a, x_min) fitted to the samples >= x_min.
PowerLawFit fit_power_law(std::span<const std::int64_t> samples, std::int64_t x_min = 1);

double power_law_log_likelihood(std::span<const std::int64_t> samples, double exponent, std::int64_t x_min);

// Σ_{k>=0} (a + k)^-s for s > 1, a > 0.
double hurwitz_zeta(double s, double a);

// G = Σ_i Σ_j |x_i - x_j| / (2 n Σ x); nullopt when the sum is zero or input empty.
std::optional<double> gini(std::span<const double> values);

} // namespace ldpower
