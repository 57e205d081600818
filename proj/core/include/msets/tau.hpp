// Ramanujan tau(n) mod q for all n <= N, via the eta product:
//   Delta = x * prod (1-x^m)^24 = x * (sum_k (-1)^k (2k+1) x^{k(k+1)/2})^8,
// i.e. seven dense-by-sparse multiplications of Jacobi's eta^3 series with
// itself, all in the residue field mod q.

#ifndef MSETS_TAU_HPP
#define MSETS_TAU_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "msets/setspec.hpp"
#include "msets/sieve.hpp"

namespace msets {

class TauTable {
  public:
    TauTable(std::uint64_t q, std::uint64_t N, std::vector<std::uint32_t> residues)
        : q_(q), n_(N), res_(std::move(residues)) {}

    std::uint64_t q() const { return q_; }
    std::uint64_t bound() const { return n_; }

    std::uint32_t tau_mod(std::uint64_t n) const {
        if (n < 1 || n > n_) throw std::out_of_range("TauTable: n out of range");
        return res_[n];
    }
    int nondiv_chi(std::uint64_t n) const { return tau_mod(n) != 0 ? 1 : 0; }
    const std::vector<std::uint32_t>& residues() const { return res_; }

  private:
    std::uint64_t q_;
    std::uint64_t n_;
    std::vector<std::uint32_t> res_; // res_[n] = tau(n) mod q, index 0 unused
};

TauTable tau_mod_sieve(std::uint64_t q, std::uint64_t N, int threads = 1);

// (#{p <= x : q does not divide tau(p)}) / pi(x)
double delta_empirical(const TauTable& table, std::uint64_t x);

// wraps the table as a chi predicate and attaches it to a tau-nondiv descriptor
std::shared_ptr<const ComputedPredicate> tau_predicate(std::shared_ptr<const TauTable> table);

// sigma_11(n) mod m for n <= N (divisor-sum oracle for the mod-691 congruence)
std::vector<std::uint32_t> sigma11_mod(std::uint64_t m, std::uint64_t N);

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t mod);

} // namespace msets

#endif
