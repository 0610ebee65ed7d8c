#pragma once

#include "ldpower/game.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ldpower {

// Generative models of yes-probabilities. Independent variants give every voter its
// own p; homogeneous variants share one p across the electorate of a vote.
namespace approval {
struct UniformIndependent {};
struct UniformHomogeneous {};
struct BetaIndependent {
    double alpha;
    double beta;
};
struct BetaHomogeneous {
    double alpha;
    double beta;
};
// p = 1 / (1 + exp(-(beta0 + beta1 * weight)))
struct Logistic {
    double beta0;
    double beta1;
};
} // namespace approval

using ApprovalModel = std::variant<approval::UniformIndependent, approval::UniformHomogeneous,
                                   approval::BetaIndependent, approval::BetaHomogeneous,
                                   approval::Logistic>;

void validate(const ApprovalModel& model);
std::string describe(const ApprovalModel& model);

double logistic(double beta0, double beta1, double x) noexcept;

enum class Estimator { exact, monte_carlo };

struct IndexResult {
    std::vector<double> values;
    // Values rescaled to sum to 1; only set for Banzhaf.
    std::optional<std::vector<double>> normalised;
    Estimator estimator = Estimator::exact;
    std::uint64_t runs = 0;
    std::vector<double> standard_error;
    std::uint64_t seed = 0;
};

IndexResult banzhaf_exact(const VotingGame& game, std::size_t cap = default_enumeration_cap);
IndexResult shapley_exact(const VotingGame& game, std::size_t cap = default_enumeration_cap);

// Probability that the voter votes yes and is a swing voter, with every voter's p
// drawn independently from Beta(alpha, beta).
IndexResult beta_index_exact(const VotingGame& game, double alpha, double beta,
                             std::size_t cap = default_enumeration_cap);

// Same event with deterministic p_j = logistic(beta0, beta1, w_j).
IndexResult regression_index_exact(const VotingGame& game, double beta0, double beta1,
                                   std::size_t cap = default_enumeration_cap);

// Same event with one shared p ~ Beta(alpha, beta).
IndexResult beta2_index_exact(const VotingGame& game, double alpha, double beta,
                              std::size_t cap = default_enumeration_cap);

// The same indices from a precomputed swing_profile, so one enumeration can serve
// several of them. The regression index needs the full coalitions and has no such form.
IndexResult banzhaf_from_profile(const VotingGame& game, std::span<const SwingCounts> profile);
IndexResult shapley_from_profile(const VotingGame& game, std::span<const SwingCounts> profile);
IndexResult beta_index_from_profile(const VotingGame& game, std::span<const SwingCounts> profile,
                                    double alpha, double beta);
IndexResult beta2_index_from_profile(const VotingGame& game, std::span<const SwingCounts> profile,
                                     double alpha, double beta);

// Dispatches on the model: uniform variants are the Beta(1,1) cases.
IndexResult index_exact(const VotingGame& game, const ApprovalModel& model,
                        std::size_t cap = default_enumeration_cap);

// Which event a Monte Carlo run counts for voter i.
//   joint:       i votes yes and is swing in the yes-coalition (Beta, Regression, Beta2).
//   conditional: i would be swing were it to vote yes (raw Banzhaf under the uniform
//                independent model, Shapley under the uniform homogeneous model).
enum class SwingEvent { joint, conditional };

inline constexpr std::uint64_t default_mc_runs = 1'000'000;

struct MonteCarloOptions {
    std::uint64_t runs = default_mc_runs;
    std::uint64_t seed = 0;
    SwingEvent event = SwingEvent::joint;
    unsigned threads = 1;
};

IndexResult index_monte_carlo(const VotingGame& game, const ApprovalModel& model,
                              const MonteCarloOptions& options);

} // namespace ldpower
