// Prime tables, dense characteristic tables chi_S(n) for n <= N, counting
// functions, and the empirical log-lcm of n^2+1.
//
// Characteristic tables are built multiplicatively: start from all ones and,
// for every prime whose exponent rule is constraining, zero out the n whose
// p-exponent is disallowed.  No per-n factorization.

#ifndef MSETS_SIEVE_HPP
#define MSETS_SIEVE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "msets/setspec.hpp"

namespace msets {

struct PrimeTable {
    std::uint64_t bound = 0;
    std::vector<std::uint32_t> primes;

    std::uint64_t pi(std::uint64_t x) const; // #{p <= x}
};

PrimeTable primes_up_to(std::uint64_t N);

// streaming segmented sieve over [2, hi]; fn(p) is called in ascending order
void for_each_prime(std::uint64_t hi, const std::function<void(std::uint64_t)>& fn);

class CharTable {
  public:
    CharTable(std::string set_name, std::uint64_t desc_hash, std::uint64_t N);

    const std::string& set_name() const { return name_; }
    std::uint64_t descriptor_hash() const { return hash_; }
    std::uint64_t bound() const { return n_; }
    double build_seconds = 0.0;
    std::uint64_t segment_size = 1ULL << 22;

    int entry(std::uint64_t n) const {
        return (n >= 1 && n <= n_) ? static_cast<int>((bits_[n >> 6] >> (n & 63)) & 1ULL) : 0;
    }
    void set_entry(std::uint64_t n, bool v) {
        if (v)
            bits_[n >> 6] |= 1ULL << (n & 63);
        else
            bits_[n >> 6] &= ~(1ULL << (n & 63));
    }

    std::uint64_t count(double x) const; // #{n <= x in S}, 0 <= x <= N
    const std::vector<std::uint64_t>& words() const { return bits_; }
    std::vector<std::uint64_t>& words() { return bits_; }

  private:
    std::string name_;
    std::uint64_t hash_;
    std::uint64_t n_;
    std::vector<std::uint64_t> bits_;
};

CharTable build_char_table(const SetDescriptor& desc, std::uint64_t N, int threads = 1);

// #{p <= x prime : chi_S(p) = 1}
std::uint64_t pi_S(const SetDescriptor& desc, std::uint64_t x);

// log lcm(1^2+1, ..., n^2+1) as sum over primes of the maximal p-adic
// valuation times log p
double log_lcm_f(std::uint64_t n);

} // namespace msets

#endif
