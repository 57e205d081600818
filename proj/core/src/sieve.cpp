#include "msets/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace msets {

namespace {
constexpr std::uint64_t kMaxSieveBound = 1ULL << 34;
} // namespace

PrimeTable primes_up_to(std::uint64_t N) {
    if (N < 2) throw std::domain_error("primes_up_to: N must be >= 2");
    if (N > kMaxSieveBound) throw std::length_error("primes_up_to: bound exceeds capacity");
    // odd-only bit sieve
    std::uint64_t half = (N - 1) / 2; // odd numbers 3,5,...,<=N
    std::vector<std::uint64_t> comp((half + 64) / 64, 0);
    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= N; ++i) {
        if ((comp[i >> 6] >> (i & 63)) & 1ULL) continue;
        std::uint64_t p = 2 * i + 1;
        for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p)
            comp[j >> 6] |= 1ULL << (j & 63);
    }
    PrimeTable t;
    t.bound = N;
    t.primes.reserve(N > 100 ? static_cast<size_t>(1.2 * static_cast<double>(N) / std::log(static_cast<double>(N))) : 32);
    t.primes.push_back(2);
    for (std::uint64_t i = 1; i <= half; ++i)
        if (!((comp[i >> 6] >> (i & 63)) & 1ULL)) t.primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
    return t;
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
    if (x > bound) throw std::out_of_range("PrimeTable::pi: x exceeds table bound");
    auto it = std::upper_bound(primes.begin(), primes.end(), x);
    return static_cast<std::uint64_t>(it - primes.begin());
}

void for_each_prime(std::uint64_t hi, const std::function<void(std::uint64_t)>& fn) {
    if (hi < 2) return;
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
    PrimeTable base = primes_up_to(std::max<std::uint64_t>(root, 3));
    constexpr std::uint64_t kSeg = 1ULL << 21;
    std::vector<std::uint8_t> seg(kSeg);
    for (std::uint64_t lo = 2; lo <= hi; lo += kSeg) {
        std::uint64_t up = std::min(hi, lo + kSeg - 1);
        std::uint64_t len = up - lo + 1;
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(len), 1);
        for (std::uint32_t p : base.primes) {
            std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
            if (pp > up) break;
            std::uint64_t start = std::max(pp, ((lo + p - 1) / p) * p);
            for (std::uint64_t m = start; m <= up; m += p) seg[m - lo] = 0;
        }
        for (std::uint64_t n = lo; n <= up; ++n)
            if (seg[n - lo]) fn(n);
    }
}

CharTable::CharTable(std::string set_name, std::uint64_t desc_hash, std::uint64_t N)
    : name_(std::move(set_name)), hash_(desc_hash), n_(N), bits_((N + 64) / 64 + 1, ~0ULL) {
    bits_[0] &= ~1ULL; // n = 0 is not in any set
    // clear bits above N
    for (std::uint64_t n = n_ + 1; n < bits_.size() * 64; ++n) set_entry(n, false);
}

std::uint64_t CharTable::count(double x) const {
    if (x < 0.0 || x > static_cast<double>(n_)) throw std::out_of_range("CharTable::count: x out of range");
    std::uint64_t ix = static_cast<std::uint64_t>(std::floor(x));
    std::uint64_t full = (ix + 1) / 64;
    std::uint64_t c = 0;
    for (std::uint64_t w = 0; w < full; ++w) c += static_cast<std::uint64_t>(std::popcount(bits_[w]));
    std::uint64_t rem = (ix + 1) % 64;
    if (rem) c += static_cast<std::uint64_t>(std::popcount(bits_[full] & ((1ULL << rem) - 1ULL)));
    return c;
}

namespace {

// zero every n in [1,N] whose p-exponent is exactly e
void clear_exact_exponent(CharTable& t, std::uint64_t N, std::uint64_t p, std::uint64_t pe) {
    for (std::uint64_t m = pe, k = 1; m <= N; m += pe, ++k)
        if (k % p != 0) t.set_entry(m, false);
}

void build_by_rules(const SetDescriptor& desc, CharTable& t, std::uint64_t N, int threads) {
    PrimeTable primes = primes_up_to(std::max<std::uint64_t>(N, 2));
    auto work = [&](std::uint64_t p) {
        const ExpRule& rule = desc.classify_prime(p);
        if (rule.kind == ExpKind::All) return;
        std::uint64_t pe = p;
        std::uint32_t e = 1;
        while (pe <= N) {
            if (!rule.contains(e)) clear_exact_exponent(t, N, p, pe);
            if (pe > N / p) break;
            pe *= p;
            ++e;
        }
    };
    if (threads <= 1) {
        for (std::uint32_t p : primes.primes) work(p);
        return;
    }
    // primes partitioned round-robin; concurrent clears on a shared word go
    // through fetch_and, and the final table is the same for any thread count
    std::vector<std::thread> pool;
    int nt = threads;
    for (int ti = 0; ti < nt; ++ti) {
        pool.emplace_back([&, ti]() {
            for (size_t i = static_cast<size_t>(ti); i < primes.primes.size(); i += static_cast<size_t>(nt)) {
                std::uint64_t p = primes.primes[i];
                const ExpRule& rule = desc.classify_prime(p);
                if (rule.kind == ExpKind::All) continue;
                std::uint64_t pe = p;
                std::uint32_t e = 1;
                while (pe <= N) {
                    if (!rule.contains(e)) {
                        // clear bits via atomic-free per-thread pass is unsafe on
                        // shared words; serialize through a word-local CAS loop
                        for (std::uint64_t m = pe, k = 1; m <= N; m += pe, ++k) {
                            if (k % p == 0) continue;
                            std::atomic_ref<std::uint64_t> w(t.words()[m >> 6]);
                            w.fetch_and(~(1ULL << (m & 63)), std::memory_order_relaxed);
                        }
                    }
                    if (pe > N / p) break;
                    pe *= p;
                    ++e;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace

CharTable build_char_table(const SetDescriptor& desc, std::uint64_t N, int threads) {
    if (N < 1) throw std::domain_error("build_char_table: N must be >= 1");
    if (N > kMaxSieveBound) throw std::length_error("build_char_table: bound exceeds capacity");
    auto t0 = std::chrono::steady_clock::now();
    CharTable t(desc.name(), desc.hash(), N);
    if (desc.is_predicate_set()) {
        const auto& pred = desc.predicate();
        if (!pred) throw std::runtime_error(desc.name() + ": predicate set has no backing sieve attached");
        if (pred->bound < N) throw std::out_of_range(desc.name() + ": backing sieve bound below N");
        for (std::uint64_t n = 1; n <= N; ++n) t.set_entry(n, pred->chi(n) != 0);
    } else {
        build_by_rules(desc, t, N, threads);
    }
    t.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return t;
}

std::uint64_t pi_S(const SetDescriptor& desc, std::uint64_t x) {
    std::uint64_t count = 0;
    if (desc.is_predicate_set()) {
        const auto& pred = desc.predicate();
        if (!pred) throw std::runtime_error(desc.name() + ": predicate set has no backing sieve attached");
        if (pred->bound < x) throw std::out_of_range(desc.name() + ": x exceeds backing sieve bound");
        for_each_prime(x, [&](std::uint64_t p) { count += static_cast<std::uint64_t>(pred->chi(p)); });
        return count;
    }
    for_each_prime(x, [&](std::uint64_t p) {
        if (desc.classify_prime(p).contains(1)) ++count;
    });
    return count;
}

double log_lcm_f(std::uint64_t n) {
    if (n < 1) throw std::domain_error("log_lcm_f: n must be >= 1");
    if (n > 2000000) throw std::length_error("log_lcm_f: n exceeds factorization budget");
    PrimeTable base = primes_up_to(n + 2);
    std::unordered_map<std::uint64_t, std::uint32_t> max_exp;
    for (std::uint64_t k = 1; k <= n; ++k) {
        std::uint64_t v = k * k + 1;
        for (std::uint32_t p : base.primes) {
            if (static_cast<std::uint64_t>(p) * p > v) break;
            if (v % p) continue;
            std::uint32_t e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            auto& slot = max_exp[p];
            slot = std::max(slot, e);
        }
        if (v > 1) {
            auto& slot = max_exp[v]; // leftover cofactor is prime
            slot = std::max(slot, 1u);
        }
    }
    double sum = 0.0, comp = 0.0;
    for (const auto& [p, e] : max_exp) {
        double term = static_cast<double>(e) * std::log(static_cast<double>(p));
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace msets
