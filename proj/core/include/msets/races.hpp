// Pointwise races between counting functions: verify S_A(x) >= S_B(x) for
// every integer x <= X, locate the first violation otherwise, and the same
// machinery over prime counts.

#ifndef MSETS_RACES_HPP
#define MSETS_RACES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "msets/setspec.hpp"
#include "msets/sieve.hpp"

namespace msets {

struct RaceCheckpoint {
    std::uint64_t x = 0;
    std::uint64_t count_a = 0;
    std::uint64_t count_b = 0;
};

struct RaceReport {
    std::string a;
    std::string b;
    std::uint64_t limit = 0;
    bool violation = false;
    std::uint64_t violation_x = 0;     // first x with A(x) < B(x)
    std::int64_t min_margin = 0;       // min over x of A(x) - B(x)
    std::uint64_t min_margin_x = 0;    // first x attaining it
    std::vector<RaceCheckpoint> checkpoints; // every 10^6
};

RaceReport race(const SetDescriptor& a, const SetDescriptor& b, std::uint64_t X, int threads = 1);

// the four progressions races: 3;2 vs 3;1, 4;3 vs 3;1, 3;2 vs 4;1, 4;3 vs 4;1
std::vector<RaceReport> race_suite_thm9(std::uint64_t X, int threads = 1);

// same comparison over pi_S counts
RaceReport prime_race(const SetDescriptor& a, const SetDescriptor& b, std::uint64_t X);

} // namespace msets

#endif
