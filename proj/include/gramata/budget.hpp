#pragma once

#include <bit>
#include <cstddef>
#include <optional>
#include <string>

namespace gramata {

/// Maximum path depth (transitions, epsilon moves included) allowed for an
/// input of length m. Either a fixed cap or
///     linear * m + log * ceil(log2(m + 2)) + constant.
struct BudgetPolicy
{
    long linear = 4;
    long log = 8;
    long constant = 16;
    std::optional<std::size_t> fixed;

    static BudgetPolicy standard() { return {}; }
    static BudgetPolicy affine(long linear, long log, long constant) { return {linear, log, constant, std::nullopt}; }
    static BudgetPolicy constant_depth(std::size_t depth) { return {0, 0, 0, depth}; }

    std::size_t operator()(std::size_t m) const
    {
        if (fixed)
            return *fixed;
        const long v = linear * static_cast<long>(m) + log * ceil_log2(m + 2) + constant;
        return v < 1 ? 1 : static_cast<std::size_t>(v);
    }

    static long ceil_log2(std::size_t x)
    {
        return x <= 1 ? 0 : static_cast<long>(std::bit_width(x - 1));
    }

    std::string str() const
    {
        if (fixed)
            return "fixed " + std::to_string(*fixed);
        return std::to_string(linear) + "*m + " + std::to_string(log) + "*ceil(log2(m+2)) + " + std::to_string(constant);
    }

    friend bool operator==(const BudgetPolicy&, const BudgetPolicy&) = default;
};

} // namespace gramata
