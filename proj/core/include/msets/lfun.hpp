// Extended-precision evaluation of zeta(s), Dirichlet L(s,chi_D) and their
// derivatives for real s >= 1, the Kronecker symbol, digamma and first
// generalized Stieltjes constants, the AGM, and the gamma function.
//
// Values at s=1 come from the residue-class decomposition into Hurwitz zeta
// functions: since sum_a chi(a) = 0 the poles cancel and
//   L(1,chi)  = A/m,              A = -sum_a chi(a) psi(a/m),
//   L'(1,chi) = (B - A log m)/m,  B = -sum_a chi(a) gamma1(a/m),
// with psi and gamma1 evaluated by Euler-Maclaurin summation.

#ifndef MSETS_LFUN_HPP
#define MSETS_LFUN_HPP

#include <cstdint>
#include <stdexcept>

#include "msets/ddouble.hpp"

namespace msets {

struct PrecisionContext {
    int digits = 30; // requested significant decimal digits, 15..31

    PrecisionContext() = default;
    explicit PrecisionContext(int d) : digits(d) {
        if (d < 15 || d > 31)
            throw std::invalid_argument("PrecisionContext: digits must be in [15,31]");
    }
    ddouble eps() const { return pow(ddouble(10.0), static_cast<long long>(-digits)); }
};

// Kronecker symbol (a/n) for arbitrary integers
int kronecker_symbol(std::int64_t a, std::int64_t n);

bool is_discriminant(std::int64_t d);             // d != 0, d = 0 or 1 mod 4
bool is_fundamental_discriminant(std::int64_t d);

// quadratic character chi_D(n) = (D/n); requires a valid discriminant
struct QuadraticCharacter {
    std::int64_t D;
    std::uint64_t modulus; // |D|

    explicit QuadraticCharacter(std::int64_t d);
    int operator()(std::uint64_t n) const {
        return kronecker_symbol(D, static_cast<std::int64_t>(n));
    }
};

// Hurwitz zeta(s, q) = sum_{k>=0} (k+q)^-s and its s-derivative, s > 1, q in (0,1]
ddouble hurwitz_zeta(ddouble s, ddouble q, const PrecisionContext& ctx);
ddouble hurwitz_zeta_sderiv(ddouble s, ddouble q, const PrecisionContext& ctx);

ddouble zeta(ddouble s, const PrecisionContext& ctx);           // s > 1
ddouble zeta_deriv(ddouble s, const PrecisionContext& ctx);     // zeta'(s), s > 1
ddouble zeta_log_deriv(ddouble s, const PrecisionContext& ctx); // zeta'/zeta(s), s > 1

ddouble dirichlet_l(ddouble s, const QuadraticCharacter& chi, const PrecisionContext& ctx);       // s >= 1
ddouble dirichlet_l_prime(ddouble s, const QuadraticCharacter& chi, const PrecisionContext& ctx); // s >= 1

// L'/L(1, chi_D) for a negative fundamental discriminant D
ddouble l_log_deriv_at_1(std::int64_t D, const PrecisionContext& ctx);

ddouble digamma(ddouble x, const PrecisionContext& ctx);          // x > 0
ddouble stieltjes_gamma1(ddouble x, const PrecisionContext& ctx); // x > 0

ddouble agm(ddouble a, ddouble b, const PrecisionContext& ctx); // a, b > 0

ddouble euler_gamma();                                      // embedded literal
ddouble gamma_function(ddouble x, const PrecisionContext& ctx); // x > 0

} // namespace msets

#endif
