// Wirsing constants C0(S), the second-order coefficient C1(S), the Landau
// and Ramanujan approximants, and winner decisions.
//
// Direct route: partial Euler products over p < P with extrapolation in
// 1/log P.  Accelerated route, for descriptors built from a quadratic
// character: closed form in L(1,chi_D) and the inert-prime Euler factor
//   Q(2) = prod_{(D/p)=-1} (1-p^-2)^-1,
// computed by the doubling recursion
//   Q(s)^2 = zeta(s) * prod_{p|D}(1-p^-s) * Q(2s) / L(s,chi_D).

#ifndef MSETS_ASYMPTOTICS_HPP
#define MSETS_ASYMPTOTICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "msets/ek.hpp"
#include "msets/lfun.hpp"
#include "msets/setspec.hpp"
#include "msets/sieve.hpp"

namespace msets {

struct C0Result {
    ddouble value;
    double error = 0.0;
    std::string method;
};

C0Result wirsing_c0_direct(const SetDescriptor& desc, std::uint64_t P = 100000000ULL);
C0Result wirsing_c0_accelerated(const SetDescriptor& desc, const PrecisionContext& ctx);
// accelerated when the descriptor matches a quadratic-character pattern,
// otherwise direct
C0Result wirsing_c0(const SetDescriptor& desc, const PrecisionContext& ctx,
                    std::uint64_t P = 100000000ULL);

// C1(S) = (1 - delta)(1 - gamma_S)
ddouble c1_coefficient(Rational delta, ddouble gamma_s);

double landau_approx(double delta, double c0, double x);                            // c0 x log^{d-1} x
double ramanujan_approx(double delta, double c0, double x, double rel_tol = 1e-10); // c0 int_2^x

enum class Winner { Landau, Ramanujan, Undecided };
const char* winner_name(Winner w);
Winner winner(const EKEstimate& gamma_s);

struct CompareRow {
    double x = 0.0;
    std::uint64_t count = 0; // S(x)
    double landau = 0.0;
    double ramanujan = 0.0;
    double err_landau = 0.0;
    double err_ramanujan = 0.0;
    double theta = 0.0; // S(x) - ramanujan approximant
};

struct ApproxComparison {
    std::string set;
    double delta = 0.0;
    double c0 = 0.0;
    Winner declared = Winner::Undecided;
    std::vector<CompareRow> rows;
    // least-squares slope of log|theta| against log x; reported, never asserted
    double theta_growth_exponent = 0.0;

    std::string to_csv() const; // x,S,landau,ramanujan,err_l,err_r,theta
};

ApproxComparison empirical_compare(const SetDescriptor& desc, const std::vector<double>& xs,
                                   const CharTable& table, double c0, const EKEstimate& gamma_s);

} // namespace msets

#endif
