#include "ldpower/game.hpp"

#include "ldpower/error.hpp"

namespace ldpower {

VotingGame::VotingGame(std::vector<VoterId> voters, std::vector<std::int64_t> weights, Quorum quorum)
    : voters_(std::move(voters)), weights_(std::move(weights)), quorum_(quorum) {
    if (voters_.size() != weights_.size())
        throw InvalidInput("voting game: voter and weight lists differ in length");
    if (voters_.empty()) throw InvalidInput("voting game: no voters");
    for (std::size_t i = 0; i < voters_.size(); ++i) {
        if (weights_[i] < 1) throw InvalidInput("voting game: weight of '" + voters_[i] + "' is below 1");
        if (!index_.emplace(voters_[i], i).second)
            throw InvalidInput("voting game: duplicate voter id '" + voters_[i] + "'");
        total_ += weights_[i];
    }
    threshold_ = quorum_.min_winning_weight(total_);
}

VotingGame VotingGame::from_weights(std::vector<std::int64_t> weights, Quorum quorum) {
    std::vector<VoterId> ids;
    ids.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) ids.push_back(std::to_string(i));
    return VotingGame(std::move(ids), std::move(weights), quorum);
}

std::size_t VotingGame::index_of(const VoterId& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw InvalidInput("unknown voter id '" + id + "'");
    return it->second;
}

namespace {

std::int64_t coalition_weight(const VotingGame& game, const Coalition& coalition) {
    std::int64_t sum = 0;
    for (const auto& id : coalition.members) sum += game.weight(game.index_of(id));
    return sum;
}

} // namespace

bool is_winning(const VotingGame& game, const Coalition& coalition) {
    return game.winning_weight(coalition_weight(game, coalition));
}

bool is_swing(const VotingGame& game, const Coalition& coalition, const VoterId& voter) {
    const std::size_t i = game.index_of(voter);
    if (!coalition.members.contains(voter))
        throw InvalidInput("voter '" + voter + "' is not a member of the coalition");
    const std::int64_t sum = coalition_weight(game, coalition);
    return game.winning_weight(sum) && !game.winning_weight(sum - game.weight(i));
}

void require_enumerable(const VotingGame& game, std::size_t cap) {
    if (game.size() > cap || game.size() > 62)
        throw ResourceLimit("game has " + std::to_string(game.size()) +
                            " voters, above the enumeration cap of " + std::to_string(cap) +
                            "; use the Monte Carlo estimator");
}

std::vector<SwingCounts> swing_profile(const VotingGame& game, std::size_t cap) {
    const std::size_t n = game.size();
    std::vector<SwingCounts> out(n, SwingCounts{std::vector<std::uint64_t>(n + 1, 0), 0});
    const auto w = game.weights();
    const std::int64_t threshold = game.threshold();
    for_each_winning_coalition(game, cap, [&](std::uint64_t mask, std::int64_t sum, std::size_t size) {
        const std::int64_t slack = sum - threshold;
        for (std::uint64_t m = mask; m != 0; m &= m - 1) {
            const auto i = static_cast<std::size_t>(__builtin_ctzll(m));
            if (w[i] > slack) ++out[i].by_size[size];
        }
    });
    for (auto& c : out)
        for (auto v : c.by_size) c.total += v;
    return out;
}

SwingCounts enumerate_swing_coalitions(const VotingGame& game, const VoterId& voter, std::size_t cap) {
    const std::size_t i = game.index_of(voter);
    return swing_profile(game, cap)[i];
}

} // namespace ldpower
