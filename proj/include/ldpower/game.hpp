#pragma once

#include "ldpower/quorum.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ldpower {

using VoterId = std::string;

inline constexpr std::size_t default_enumeration_cap = 25;

// Weighted voting game: a coalition wins when its weight is at least q times the
// total weight. Immutable after construction.
class VotingGame {
public:
    VotingGame(std::vector<VoterId> voters, std::vector<std::int64_t> weights, Quorum quorum);

    // Voters are named "0", "1", ... in weight order.
    static VotingGame from_weights(std::vector<std::int64_t> weights, Quorum quorum);

    std::size_t size() const noexcept { return voters_.size(); }
    std::span<const VoterId> voters() const noexcept { return voters_; }
    std::span<const std::int64_t> weights() const noexcept { return weights_; }
    std::int64_t weight(std::size_t i) const { return weights_.at(i); }
    const Quorum& quorum() const noexcept { return quorum_; }
    std::int64_t total_weight() const noexcept { return total_; }

    // Smallest coalition weight that wins; exact ceil(q * total).
    std::int64_t threshold() const noexcept { return threshold_; }
    bool winning_weight(std::int64_t w) const noexcept { return w >= threshold_; }

    std::size_t index_of(const VoterId& id) const;

private:
    std::vector<VoterId> voters_;
    std::vector<std::int64_t> weights_;
    Quorum quorum_;
    std::int64_t total_ = 0;
    std::int64_t threshold_ = 0;
    std::unordered_map<VoterId, std::size_t> index_;
};

struct Coalition {
    std::set<VoterId> members;
};

bool is_winning(const VotingGame& game, const Coalition& coalition);
bool is_swing(const VotingGame& game, const Coalition& coalition, const VoterId& voter);

// Swing coalitions of one voter, by coalition size (index 0..n).
struct SwingCounts {
    std::vector<std::uint64_t> by_size;
    std::uint64_t total = 0;
};

SwingCounts enumerate_swing_coalitions(const VotingGame& game, const VoterId& voter,
                                       std::size_t cap = default_enumeration_cap);

// Swing counts for every voter from a single pass over all coalitions.
std::vector<SwingCounts> swing_profile(const VotingGame& game,
                                       std::size_t cap = default_enumeration_cap);

void require_enumerable(const VotingGame& game, std::size_t cap);

// Calls visit(mask, weight, size) for every winning coalition, members encoded as
// bits over the game's voter order. Subtrees that cannot reach the threshold are pruned.
template <class Visit>
void for_each_winning_coalition(const VotingGame& game, std::size_t cap, Visit&& visit) {
    require_enumerable(game, cap);
    const std::size_t n = game.size();
    const auto w = game.weights();
    std::vector<std::int64_t> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + w[i];
    const std::int64_t threshold = game.threshold();

    auto recurse = [&](auto&& self, std::size_t k, std::uint64_t mask, std::int64_t sum,
                       std::size_t size) -> void {
        if (sum + suffix[k] < threshold) return;
        if (k == n) {
            visit(mask, sum, size);
            return;
        }
        self(self, k + 1, mask, sum, size);
        self(self, k + 1, mask | (std::uint64_t{1} << k), sum + w[k], size + 1);
    };
    recurse(recurse, 0, 0, 0, 0);
}

} // namespace ldpower
