#include "msets/races.hpp"

namespace msets {

namespace {
constexpr std::uint64_t kCheckpointStep = 1000000;
}

RaceReport race(const SetDescriptor& a, const SetDescriptor& b, std::uint64_t X, int threads) {
    RaceReport r;
    r.a = a.name();
    r.b = b.name();
    r.limit = X;
    if (X == 0) return r; // vacuously no violation
    CharTable ta = build_char_table(a, X, threads);
    CharTable tb = build_char_table(b, X, threads);
    std::uint64_t ca = 0, cb = 0;
    std::int64_t min_margin = 0;
    std::uint64_t min_x = 0;
    bool have_min = false;
    for (std::uint64_t n = 1; n <= X; ++n) {
        ca += static_cast<std::uint64_t>(ta.entry(n));
        cb += static_cast<std::uint64_t>(tb.entry(n));
        std::int64_t margin = static_cast<std::int64_t>(ca) - static_cast<std::int64_t>(cb);
        if (!have_min || margin < min_margin) {
            min_margin = margin;
            min_x = n;
            have_min = true;
        }
        if (margin < 0 && !r.violation) {
            r.violation = true;
            r.violation_x = n;
        }
        if (n % kCheckpointStep == 0) r.checkpoints.push_back({n, ca, cb});
    }
    r.min_margin = min_margin;
    r.min_margin_x = min_x;
    return r;
}

std::vector<RaceReport> race_suite_thm9(std::uint64_t X, int threads) {
    const std::pair<const char*, const char*> pairs[] = {
        {"progsem:3:2", "progsem:3:1"},
        {"progsem:4:3", "progsem:3:1"},
        {"progsem:3:2", "progsem:4:1"},
        {"progsem:4:3", "progsem:4:1"},
    };
    std::vector<RaceReport> out;
    for (const auto& [an, bn] : pairs)
        out.push_back(race(builtin_descriptor(an), builtin_descriptor(bn), X, threads));
    return out;
}

RaceReport prime_race(const SetDescriptor& a, const SetDescriptor& b, std::uint64_t X) {
    RaceReport r;
    r.a = a.name() + " (primes)";
    r.b = b.name() + " (primes)";
    r.limit = X;
    if (X == 0) return r;
    std::uint64_t ca = 0, cb = 0;
    std::int64_t min_margin = 0;
    std::uint64_t min_x = 1;
    std::uint64_t next_checkpoint = kCheckpointStep;
    for_each_prime(X, [&](std::uint64_t p) {
        while (next_checkpoint < p && next_checkpoint <= X) {
            r.checkpoints.push_back({next_checkpoint, ca, cb});
            next_checkpoint += kCheckpointStep;
        }
        if (a.classify_prime(p).contains(1)) ++ca;
        if (b.classify_prime(p).contains(1)) ++cb;
        std::int64_t margin = static_cast<std::int64_t>(ca) - static_cast<std::int64_t>(cb);
        if (margin < min_margin) {
            min_margin = margin;
            min_x = p;
        }
        if (margin < 0 && !r.violation) {
            r.violation = true;
            r.violation_x = p;
        }
    });
    while (next_checkpoint <= X) {
        r.checkpoints.push_back({next_checkpoint, ca, cb});
        next_checkpoint += kCheckpointStep;
    }
    r.min_margin = min_margin;
    r.min_margin_x = min_x;
    return r;
}

} // namespace msets
