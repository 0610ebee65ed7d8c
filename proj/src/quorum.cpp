#include "ldpower/quorum.hpp"

#include "ldpower/error.hpp"

#include <charconv>

namespace ldpower {

Quorum::Quorum(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den <= 0 || num <= 0 || num >= den)
        throw InvalidInput("quorum must be a fraction strictly between 0 and 1, got " +
                           std::to_string(num) + "/" + std::to_string(den));
}

std::int64_t Quorum::min_winning_weight(std::int64_t total) const {
    const __int128 prod = static_cast<__int128>(num_) * total;
    __int128 q = prod / den_;
    if (q * den_ < prod) ++q;
    return static_cast<std::int64_t>(q);
}

bool Quorum::reached_by(std::int64_t part, std::int64_t total) const noexcept {
    return static_cast<__int128>(part) * den_ >= static_cast<__int128>(num_) * total;
}

bool Quorum::exceeded_by(std::int64_t part, std::int64_t total) const noexcept {
    return static_cast<__int128>(part) * den_ > static_cast<__int128>(num_) * total;
}

Quorum Quorum::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw InvalidInput("quorum must be written as a/b: '" + text + "'");
    std::int64_t num = 0;
    std::int64_t den = 0;
    const char* first = text.data();
    const char* mid = first + slash;
    const char* last = first + text.size();
    auto r1 = std::from_chars(first, mid, num);
    auto r2 = std::from_chars(mid + 1, last, den);
    if (r1.ec != std::errc{} || r1.ptr != mid || r2.ec != std::errc{} || r2.ptr != last)
        throw InvalidInput("malformed quorum '" + text + "'");
    return Quorum(num, den);
}

std::string Quorum::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

} // namespace ldpower
