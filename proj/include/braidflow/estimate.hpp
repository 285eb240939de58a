#pragma once

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace braidflow {

// Monte Carlo value with a 95% confidence interval. Reproducible: the
// same seed and configuration give the same mean bit for bit under any
// thread count (per-sample derived seeds, fixed-order reduction).
struct Estimate {
    double mean = 0.0;
    double half_width = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
    std::vector<int> p_schedule;
    std::vector<std::string> flags;

    bool contains(double value) const {
        return mean - half_width <= value && value <= mean + half_width;
    }
    bool flagged(const std::string& f) const {
        for (const auto& g : flags)
            if (g == f) return true;
        return false;
    }

    nlohmann::json to_json() const {
        return {{"mean", mean},       {"ci", half_width}, {"samples", samples},
                {"seed", seed},       {"p_schedule", p_schedule}, {"flags", flags}};
    }
};

struct Schedule {
    std::vector<int> powers{1, 2, 4, 8, 16, 32};

    void validate() const;
    int final_power() const { return powers.back(); }
};

} // namespace braidflow
