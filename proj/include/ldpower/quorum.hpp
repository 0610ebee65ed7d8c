#pragma once

#include <cstdint>
#include <compare>
#include <string>

namespace ldpower {

// Exact fraction num/den with 0 < num/den < 1. Never converted to floating point
// for decisions; all comparisons go through 128-bit cross multiplication.
class Quorum {
public:
    Quorum(std::int64_t num, std::int64_t den);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Smallest integer weight w with w >= q * total.
    std::int64_t min_winning_weight(std::int64_t total) const;

    // part >= q * total
    bool reached_by(std::int64_t part, std::int64_t total) const noexcept;
    // part > q * total
    bool exceeded_by(std::int64_t part, std::int64_t total) const noexcept;

    // Parses "2/3" or "0.5"-free integer forms only: "a/b".
    static Quorum parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const Quorum&, const Quorum&) = default;

private:
    std::int64_t num_;
    std::int64_t den_;
};

} // namespace ldpower
