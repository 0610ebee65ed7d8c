#pragma once

#include "ldpower/dataset.hpp"
#include "ldpower/indices.hpp"

#include <cstdint>

namespace ldpower {

struct SynthConfig {
    std::size_t users = 2000;
    std::size_t initiatives = 500;
    std::size_t areas = 5;
    Quorum quorum{2, 3};
    // Homogeneous models draw one p per initiative; independent ones one p per user;
    // the logistic model uses 1 + the user's delegation target as weight.
    ApprovalModel approval = approval::BetaHomogeneous{3.00, 1.17};
    double indegree_exponent = 1.38;
    double participation_exponent = 1.87;
    // Median number of initiatives a user without delegations votes on.
    double participation_median = 8.0;
    // Share of users that delegate once.
    double delegation_fraction = 0.15;
    double revocation_probability = 0.25;
    std::int64_t days = 1200;
    std::uint64_t seed = 1;
};

void validate(const SynthConfig& config);

// Deterministic given the config.
Dataset generate_synthetic(const SynthConfig& config);

} // namespace ldpower
