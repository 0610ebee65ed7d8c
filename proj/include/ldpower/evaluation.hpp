#pragma once

#include "ldpower/empirical.hpp"
#include "ldpower/indices.hpp"
#include "ldpower/power_curve.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ldpower {

enum class ClassicalIndex { banzhaf, shapley };

// A power index under evaluation: a classical index (raw Banzhaf, Shapley) or the
// swing probability under an approval model.
struct IndexModel {
    std::string name;
    std::variant<ClassicalIndex, ApprovalModel> kind;
};

struct ModelParameters {
    double alpha = 3.00;
    double beta = 1.17;
    double beta0 = 0.7933;
    double beta1 = 0.0036;
};

// Names: banzhaf, shapley, beta, regression, beta2, uniform, uniform-homogeneous.
IndexModel make_index_model(const std::string& name, const ModelParameters& params = {});

struct IndexOptions {
    std::size_t cap = default_enumeration_cap;
    bool mc_fallback = true;
    std::uint64_t mc_runs = default_mc_runs;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

// Exact when the game fits under the cap, otherwise Monte Carlo (or ResourceLimit when
// the fallback is off). Banzhaf values are raw.
IndexResult compute_index(const VotingGame& game, const IndexModel& model, const IndexOptions& options);

struct CurveComparison {
    double squared_error = 0.0;
    std::size_t compared = 0;
    std::size_t skipped = 0; // weights present in only one curve
};

// Σ_w (predicted_w - measured_w)^2 over weights present in both curves.
CurveComparison compare_curves(const PowerCurve& predicted, const PowerCurve& measured);
double squared_error(const PowerCurve& predicted, const PowerCurve& measured);

struct PowerObservation {
    double index = 0.0; // predicted probability of potential power
    bool potential = false;
};

inline constexpr double default_clamp_epsilon = 1e-9;

struct LikelihoodResult {
    double log2_likelihood = 0.0;
    std::uint64_t clamped = 0;
    std::size_t observations = 0;
};

// Σ log2 p(γ) with predictions clamped to [eps, 1 - eps]; clamps are counted.
LikelihoodResult log_likelihood(std::span<const PowerObservation> observations,
                                double epsilon = default_clamp_epsilon);

// 2^(-logL / M), logL in bits.
double perplexity(double log2_likelihood, std::size_t count);

struct ModelScore {
    std::string model;
    CurveComparison global;
    double log2_likelihood = 0.0;
    double perplexity = 1.0;                 // normalised per initiative
    double perplexity_per_observation = 1.0; // normalised per vote
    std::uint64_t clamped = 0;
    std::size_t exact_games = 0;
    std::size_t monte_carlo_games = 0;
    PowerCurve predicted;
};

struct EvaluationReport {
    std::vector<ModelScore> models;
    std::size_t initiatives = 0;
    std::size_t observations = 0;
    std::string fingerprint;
    std::uint64_t mc_runs = 0;
    std::uint64_t seed = 0;
    PowerCurve measured;
};

struct BenchmarkOptions {
    IndexOptions index;
    std::int64_t max_weight = 100;
    double epsilon = default_clamp_epsilon;
};

// Scores every model against measured potential power on each initiative.
EvaluationReport benchmark(const ResolvedDataset& data, std::span<const IndexModel> models,
                           const BenchmarkOptions& options = {});

// Hash of the resolved votes, independent of initiative order.
std::string fingerprint(const ResolvedDataset& data);

} // namespace ldpower
