#pragma once

#include <cstdint>
#include <map>
#include <optional>

namespace ldpower {

// Average of a per-vote quantity bucketed by voting weight.
class PowerCurve {
public:
    struct Bucket {
        double sum = 0.0;
        std::uint64_t count = 0;
        double mean() const noexcept { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
    };

    explicit PowerCurve(std::int64_t max_weight = 100) : max_weight_(max_weight) {}

    // Observations with weight outside [1, max_weight] are ignored.
    void add(std::int64_t weight, double value);
    void set(std::int64_t weight, double mean, std::uint64_t count);

    std::optional<double> mean(std::int64_t weight) const;
    std::uint64_t count(std::int64_t weight) const;
    std::int64_t max_weight() const noexcept { return max_weight_; }
    const std::map<std::int64_t, Bucket>& buckets() const noexcept { return buckets_; }

private:
    std::int64_t max_weight_;
    std::map<std::int64_t, Bucket> buckets_;
};

} // namespace ldpower
