#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace titsring {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& value) { return value.str(); }

inline BigInt ipow(BigInt base, unsigned exponent) {
    BigInt result = 1;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        base *= base;
        exponent >>= 1U;
    }
    return result;
}

/// Enumeration cap expressed as a count of objects, never wall time.
struct Budget {
    std::uint64_t max_objects = 1'000'000;
};

/// Thrown when an operation would enumerate more objects than allowed.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::string what_counted, BigInt estimate, std::uint64_t cap)
        : std::runtime_error("budget exceeded: " + what_counted + " needs " + estimate.str() +
                             " objects, cap is " + std::to_string(cap)),
          what_counted_(std::move(what_counted)),
          estimate_(std::move(estimate)),
          cap_(cap) {}

    const std::string& what_counted() const { return what_counted_; }
    const BigInt& estimate() const { return estimate_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::string what_counted_;
    BigInt estimate_;
    std::uint64_t cap_;
};

inline void check_budget(const Budget& budget, const BigInt& estimate, std::string_view what) {
    if (estimate > budget.max_objects) throw BudgetExceeded(std::string(what), estimate, budget.max_objects);
}

}  // namespace titsring
