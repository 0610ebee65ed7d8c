#include "ldpower/power_curve.hpp"

namespace ldpower {

void PowerCurve::add(std::int64_t weight, double value) {
    if (weight < 1 || weight > max_weight_) return;
    auto& b = buckets_[weight];
    b.sum += value;
    ++b.count;
}

void PowerCurve::set(std::int64_t weight, double mean, std::uint64_t count) {
    if (weight < 1 || weight > max_weight_ || count == 0) return;
    buckets_[weight] = Bucket{mean * static_cast<double>(count), count};
}

std::optional<double> PowerCurve::mean(std::int64_t weight) const {
    const auto it = buckets_.find(weight);
    if (it == buckets_.end() || it->second.count == 0) return std::nullopt;
    return it->second.mean();
}

std::uint64_t PowerCurve::count(std::int64_t weight) const {
    const auto it = buckets_.find(weight);
    return it == buckets_.end() ? 0 : it->second.count;
}

} // namespace ldpower
