// Euler-Kronecker constants gamma_S
//
// Three routes:
//  * partial sums:  delta log x - sum_{n<=x} Lambda_S(n)/n, or the generator
//    form delta log x - sum_{q_i<=x} log q_i/(q_i-1) when S is a semigroup;
//    heuristic O(1/log x) accuracy, never claimed rigorous;
//  * L-function identities for quadratic semigroups:
//      2 gamma_{S_D} = gamma + L'/L(1,chi_D)
//                      - sum_{(D/p)=-1} 2 log p/(p^2-1) + sum_{p|D} log p/(p-1),
//    the inert-prime sum evaluated by the doubling series
//      sum_{(D/p)=-1} 2 log p/(p^2-1)
//        = sum_k [ L'/L(2^k,chi_D) - zeta'/zeta(2^k)
//                  - sum_{p|D} log p/(p^{2^k}-1) ];
//  * derived relations (sum-of-two-squares set, non-hypotenuse numbers,
//    the S'_D semigroups, Cilleruelo's constant J).

#ifndef MSETS_EK_HPP
#define MSETS_EK_HPP

#include <cstdint>
#include <string>

#include "msets/ddouble.hpp"
#include "msets/lfun.hpp"
#include "msets/setspec.hpp"

namespace msets {

enum class EkMethod { PartialSum, LFunction, Derived };
const char* ek_method_name(EkMethod m);

struct EKEstimate {
    std::string set;
    ddouble value;
    EkMethod method = EkMethod::PartialSum;
    std::string truncation; // "x=10000000" or "doubling series, k<=7"
    double error = 0.0;     // rigorous bound for the L-function route, heuristic otherwise
    bool rigorous = false;
};

// delta log x - (Lambda_S or generator sum); requires x >= 100
EKEstimate ek_partial_sum(const SetDescriptor& desc, std::uint64_t x);

// sum over inert primes of 2 log p/(p^2-1) by the doubling series; the
// returned bound covers the dropped tail
ddouble prime_square_sum(std::int64_t D, const PrecisionContext& ctx, int* terms_used = nullptr,
                         double* tail_bound = nullptr);

// sum_p (D/p) log p/(p-1) by the companion accelerated series
ddouble char_log_prime_sum(std::int64_t D, const PrecisionContext& ctx);

// sum_{p | D} log p/(p-1)
ddouble ramified_log_sum(std::int64_t D);

EKEstimate ek_quadratic(std::int64_t D, const PrecisionContext& ctx);
EKEstimate ek_sum_two_squares(const PrecisionContext& ctx);
EKEstimate ek_nonhypotenuse(const PrecisionContext& ctx);
EKEstimate ek_sprime_quadratic(std::int64_t D, const PrecisionContext& ctx);

// gamma_{S_B} assembled from the AGM closed form of L'/L(1,chi_-4)
ddouble gamma_sum_two_squares_agm(const PrecisionContext& ctx);

ddouble cilleruelo_j(const PrecisionContext& ctx);        // 2 gamma - 1 - (3/2) log 2 - 2 gamma_NH
ddouble cilleruelo_j_direct(const PrecisionContext& ctx); // gamma - 1 - (log 2)/2 - sum_p ((-4/p)) log p/(p-1)

struct BloepReport {
    std::uint64_t q = 0;
    std::uint64_t x = 0;
    double gamma_prog = 0.0; // partial-sum estimate for S'_{q;1}
    double gamma_phi = 0.0;  // partial-sum estimate for S_{phi;q}
    double expected = 0.0;   // gamma + 2 log q/(q^2-1)
    double residual = 0.0;   // gamma_prog + gamma_phi - expected
};

BloepReport consistency_bloep(std::uint64_t q, std::uint64_t x);

} // namespace msets

#endif
