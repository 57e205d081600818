// Generalized von Mangoldt function Lambda_S, supported on prime powers:
// Lambda_S(p^e) = c_S(p^e) log p with c_S(p) = chi_S(p) and
//   c_S(p^e) = e chi_S(p^e) - sum_{j<e} c_S(p^j) chi_S(p^{e-j}).
// Closed forms: the composition sum over k_1+...+k_m = e, and the partition
// form with multinomial weights.  Coefficients are exact integers; closed
// forms are exact rationals and must agree with the recursion.

#ifndef MSETS_MANGOLDT_HPP
#define MSETS_MANGOLDT_HPP

#include <cstdint>

#include "msets/rational.hpp"
#include "msets/setspec.hpp"

namespace msets {

struct MangoldtValue {
    std::uint64_t p = 0;
    std::uint32_t e = 0;
    std::int64_t coeff = 0; // c_S(p^e)
    double value = 0.0;     // coeff * log(p)
};

MangoldtValue lambda_recursive(const SetDescriptor& desc, std::uint64_t p, std::uint32_t e);

// composition-sum closed form, exact rational coefficient; e <= 12
Rational lambda_closed_coeff(const SetDescriptor& desc, std::uint64_t p, std::uint32_t e);
MangoldtValue lambda_closed(const SetDescriptor& desc, std::uint64_t p, std::uint32_t e);

// partition form (weight W); e <= 6
Rational lambda_partition_coeff(const SetDescriptor& desc, std::uint64_t p, std::uint32_t e);

// exact sum_{p^e <= x} Lambda_S(p^e) / p^e
double mangoldt_partial_sum(const SetDescriptor& desc, std::uint64_t x);

} // namespace msets

#endif
