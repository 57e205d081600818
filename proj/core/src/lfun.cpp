#include "msets/lfun.hpp"

#include <array>
#include <cstdlib>
#include <vector>

namespace msets {

namespace {

// B_2 .. B_32 as exact fractions
struct BernFrac {
    long long num;
    long long den;
};
constexpr std::array<BernFrac, 16> kBernoulli = {{
    {1, 6},
    {-1, 30},
    {1, 42},
    {-1, 30},
    {5, 66},
    {-691, 2730},
    {7, 6},
    {-3617, 510},
    {43867, 798},
    {-174611, 330},
    {854513, 138},
    {-236364091, 2730},
    {8553103, 6},
    {-23749461029LL, 870},
    {8615841276005LL, 14322},
    {-7709321041217LL, 510},
}};

struct BernTables {
    std::array<ddouble, 16> over_fact;   // B_2j / (2j)!
    std::array<ddouble, 16> over_2j;     // B_2j / (2j)
    std::array<ddouble, 16> harmonic;    // H_{2j-1}
    BernTables() {
        ddouble fact(1.0);
        ddouble h(0.0);
        for (int j = 1; j <= 16; ++j) {
            fact *= static_cast<double>(2 * j - 1);
            fact *= static_cast<double>(2 * j);
            h += ddouble(1.0) / static_cast<double>(2 * j - 1);
            if (j > 1) h += ddouble(1.0) / static_cast<double>(2 * j - 2);
            ddouble b = ddouble(kBernoulli[static_cast<size_t>(j - 1)].num) /
                        ddouble(kBernoulli[static_cast<size_t>(j - 1)].den);
            over_fact[static_cast<size_t>(j - 1)] = b / fact;
            over_2j[static_cast<size_t>(j - 1)] = b / static_cast<double>(2 * j);
            harmonic[static_cast<size_t>(j - 1)] = h;
        }
    }
};

const BernTables& bern() {
    static const BernTables t;
    return t;
}

ddouble pow_dd(ddouble base, ddouble e) { return exp(e * log(base)); }

} // namespace

int kronecker_symbol(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    int k = 1;
    if (v & 1) {
        int am8 = static_cast<int>(((a % 8) + 8) % 8);
        if (am8 == 3 || am8 == 5) k = -1;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) {
            a >>= 1;
            ++v;
        }
        if (v & 1) {
            int nm8 = static_cast<int>(n % 8);
            if (nm8 == 3 || nm8 == 5) k = -k;
        }
        if ((a % 4) == 3 && (n % 4) == 3) k = -k;
        std::int64_t t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? k : 0;
}

bool is_discriminant(std::int64_t d) {
    if (d == 0) return false;
    std::int64_t m = ((d % 4) + 4) % 4;
    return m == 0 || m == 1;
}

namespace {
bool squarefree(std::int64_t n) {
    if (n < 0) n = -n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}
} // namespace

bool is_fundamental_discriminant(std::int64_t d) {
    if (!is_discriminant(d) || d == 1) return false;
    std::int64_t m4 = ((d % 4) + 4) % 4;
    if (m4 == 1) return squarefree(d);
    std::int64_t m = d / 4;
    std::int64_t r = ((m % 4) + 4) % 4;
    return (r == 2 || r == 3) && squarefree(m);
}

QuadraticCharacter::QuadraticCharacter(std::int64_t d) : D(d), modulus(0) {
    if (!is_discriminant(d))
        throw std::invalid_argument("QuadraticCharacter: D must be a nonzero discriminant (0 or 1 mod 4)");
    modulus = static_cast<std::uint64_t>(d < 0 ? -d : d);
}

// ---------------------------------------------------------------------------
// Hurwitz zeta by Euler-Maclaurin:
//   zeta(s,q) = sum_{k<N} (k+q)^-s + z^{1-s}/(s-1) + z^-s/2
//             + sum_j B_2j/(2j)! (s)_{2j-1} z^{-s-2j+1},   z = N+q.
// N=64 and up to 16 Bernoulli terms leave a remainder far below 1e-40 for
// s in (1, 120].
// ---------------------------------------------------------------------------

namespace {
constexpr int kEmN = 64;

void check_hurwitz_args(ddouble s, ddouble q) {
    if (!(s.hi > 1.0)) throw std::domain_error("hurwitz_zeta: requires s > 1");
    if (!(q.hi > 0.0) || q.hi > 2.0) throw std::domain_error("hurwitz_zeta: requires 0 < q <= 2");
}
} // namespace

ddouble hurwitz_zeta(ddouble s, ddouble q, const PrecisionContext& ctx) {
    check_hurwitz_args(s, q);
    if (s.hi > 120.0) {
        ddouble sum(0.0);
        for (int k = 0; k < 24; ++k) sum += pow_dd(q + static_cast<double>(k), -s);
        return sum;
    }
    const ddouble eps = ctx.eps() * 1e-4;
    ddouble direct(0.0);
    for (int k = 0; k < kEmN; ++k) direct += pow_dd(q + static_cast<double>(k), -s);
    ddouble z = q + static_cast<double>(kEmN);
    ddouble zinv = ddouble(1.0) / z;
    ddouble z_ms = pow_dd(z, -s); // z^-s
    ddouble sm1 = s - 1.0;
    ddouble result = direct + z_ms * z / sm1 + ldexp(z_ms, -1);

    ddouble zinv2 = zinv * zinv;
    ddouble rising = s;            // (s)_{2j-1}
    ddouble zpow = z_ms * zinv;    // z^{-s-2j+1}
    for (int j = 1; j <= 16; ++j) {
        ddouble term = bern().over_fact[static_cast<size_t>(j - 1)] * rising * zpow;
        result += term;
        if (std::abs(term.hi) < std::abs(eps.hi * result.hi)) break;
        rising *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
        zpow *= zinv2;
    }
    return result;
}

ddouble hurwitz_zeta_sderiv(ddouble s, ddouble q, const PrecisionContext& ctx) {
    check_hurwitz_args(s, q);
    if (s.hi > 120.0) {
        ddouble sum(0.0);
        for (int k = 0; k < 24; ++k) {
            ddouble b = q + static_cast<double>(k);
            sum -= log(b) * pow_dd(b, -s);
        }
        return sum;
    }
    const ddouble eps = ctx.eps() * 1e-4;
    ddouble direct(0.0);
    for (int k = 0; k < kEmN; ++k) {
        ddouble b = q + static_cast<double>(k);
        direct -= log(b) * pow_dd(b, -s);
    }
    ddouble z = q + static_cast<double>(kEmN);
    ddouble L = log(z);
    ddouble zinv = ddouble(1.0) / z;
    ddouble z_ms = pow_dd(z, -s);
    ddouble sm1 = s - 1.0;
    ddouble result = direct;
    result -= z_ms * z * (L / sm1 + ddouble(1.0) / (sm1 * sm1));
    result -= ldexp(L * z_ms, -1);

    ddouble zinv2 = zinv * zinv;
    ddouble rising = s;       // P_j(s)
    ddouble rising_d(1.0);    // P_j'(s)
    ddouble zpow = z_ms * zinv;
    for (int j = 1; j <= 16; ++j) {
        ddouble term = bern().over_fact[static_cast<size_t>(j - 1)] * zpow * (rising_d - rising * L);
        result += term;
        if (std::abs(term.hi) < std::abs(eps.hi) * (std::abs(result.hi) + 1e-300)) break;
        ddouble f1 = s + static_cast<double>(2 * j - 1);
        ddouble f2 = s + static_cast<double>(2 * j);
        rising_d = rising_d * f1 * f2 + rising * (f1 + f2);
        rising *= f1 * f2;
        zpow *= zinv2;
    }
    return result;
}

ddouble zeta(ddouble s, const PrecisionContext& ctx) {
    if (!(s.hi > 1.0)) throw std::domain_error("zeta: requires s > 1");
    return hurwitz_zeta(s, ddouble(1.0), ctx);
}

ddouble zeta_deriv(ddouble s, const PrecisionContext& ctx) {
    if (!(s.hi > 1.0)) throw std::domain_error("zeta_deriv: requires s > 1");
    return hurwitz_zeta_sderiv(s, ddouble(1.0), ctx);
}

ddouble zeta_log_deriv(ddouble s, const PrecisionContext& ctx) {
    return zeta_deriv(s, ctx) / zeta(s, ctx);
}

// ---------------------------------------------------------------------------
// digamma and first generalized Stieltjes constant, Euler-Maclaurin again
// ---------------------------------------------------------------------------

ddouble digamma(ddouble x, const PrecisionContext&) {
    if (!(x.hi > 0.0)) throw std::domain_error("digamma: requires x > 0");
    ddouble rec(0.0);
    int shift = 0;
    while (x.hi + shift < 48.0) {
        rec += ddouble(1.0) / (x + static_cast<double>(shift));
        ++shift;
    }
    ddouble z = x + static_cast<double>(shift);
    ddouble zinv = ddouble(1.0) / z;
    ddouble zinv2 = zinv * zinv;
    ddouble result = log(z) - ldexp(zinv, -1);
    ddouble zpow = zinv2;
    for (int j = 1; j <= 16; ++j) {
        ddouble term = bern().over_2j[static_cast<size_t>(j - 1)] * zpow;
        result -= term;
        if (std::abs(term.hi) < 1e-38) break;
        zpow *= zinv2;
    }
    return result - rec;
}

ddouble stieltjes_gamma1(ddouble x, const PrecisionContext&) {
    if (!(x.hi > 0.0)) throw std::domain_error("stieltjes_gamma1: requires x > 0");
    int n = 0;
    while (x.hi + n < 64.0) ++n;
    ddouble direct(0.0);
    for (int k = 0; k < n; ++k) {
        ddouble b = x + static_cast<double>(k);
        direct += log(b) / b;
    }
    ddouble z = x + static_cast<double>(n);
    ddouble L = log(z);
    ddouble result = direct - ldexp(L * L, -1) + L / ldexp(z, 1);
    ddouble zinv2 = ddouble(1.0) / (z * z);
    ddouble zpow = zinv2;
    for (int j = 1; j <= 16; ++j) {
        ddouble term = bern().over_2j[static_cast<size_t>(j - 1)] * zpow *
                       (bern().harmonic[static_cast<size_t>(j - 1)] - L);
        result -= term;
        if (std::abs(term.hi) < 1e-38) break;
        zpow *= zinv2;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Dirichlet L for real quadratic characters
// ---------------------------------------------------------------------------

namespace {

// A = -sum_a chi(a) psi(a/m), B = -sum_a chi(a) gamma1(a/m)
void character_sums_at_1(const QuadraticCharacter& chi, const PrecisionContext& ctx,
                         ddouble& A, ddouble& B, bool want_B) {
    const std::uint64_t m = chi.modulus;
    ddouble md(static_cast<long long>(m));
    A = ddouble(0.0);
    B = ddouble(0.0);
    for (std::uint64_t a = 1; a < m; ++a) {
        int c = chi(a);
        if (c == 0) continue;
        ddouble q = ddouble(static_cast<long long>(a)) / md;
        ddouble psi = digamma(q, ctx);
        A -= (c > 0) ? psi : -psi;
        if (want_B) {
            ddouble g1 = stieltjes_gamma1(q, ctx);
            B -= (c > 0) ? g1 : -g1;
        }
    }
}

bool is_exact_one(ddouble s) { return s.hi == 1.0 && s.lo == 0.0; }

// For larger s the residue-class Hurwitz decomposition cancels catastrophically
// (the summands grow like m^s); the plain Dirichlet series needs only
// ~10^(33/s) terms there.
constexpr double kDirectSeriesThreshold = 8.0;

int direct_series_terms(double s) {
    double n = std::pow(10.0, 34.0 / s) + 8.0;
    return static_cast<int>(std::min(n, 25000.0));
}

} // namespace

ddouble dirichlet_l(ddouble s, const QuadraticCharacter& chi, const PrecisionContext& ctx) {
    if (!(s.hi >= 1.0)) throw std::domain_error("dirichlet_l: requires s >= 1");
    const std::uint64_t m = chi.modulus;
    ddouble md(static_cast<long long>(m));
    if (is_exact_one(s)) {
        ddouble A, B;
        character_sums_at_1(chi, ctx, A, B, false);
        return A / md;
    }
    if (s.hi >= kDirectSeriesThreshold) {
        ddouble sum(1.0);
        int nmax = direct_series_terms(s.hi);
        for (int n = 2; n <= nmax; ++n) {
            int c = chi(static_cast<std::uint64_t>(n));
            if (c == 0) continue;
            ddouble t = exp(-(s * log(ddouble(static_cast<long long>(n)))));
            sum += (c > 0) ? t : -t;
        }
        return sum;
    }
    ddouble sum(0.0);
    for (std::uint64_t a = 1; a < m; ++a) {
        int c = chi(a);
        if (c == 0) continue;
        ddouble h = hurwitz_zeta(s, ddouble(static_cast<long long>(a)) / md, ctx);
        sum += (c > 0) ? h : -h;
    }
    return pow_dd(md, -s) * sum;
}

ddouble dirichlet_l_prime(ddouble s, const QuadraticCharacter& chi, const PrecisionContext& ctx) {
    if (!(s.hi >= 1.0)) throw std::domain_error("dirichlet_l_prime: requires s >= 1");
    const std::uint64_t m = chi.modulus;
    ddouble md(static_cast<long long>(m));
    ddouble lm = log(md);
    if (is_exact_one(s)) {
        ddouble A, B;
        character_sums_at_1(chi, ctx, A, B, true);
        return (B - A * lm) / md;
    }
    if (s.hi >= kDirectSeriesThreshold) {
        ddouble sum(0.0);
        int nmax = direct_series_terms(s.hi);
        for (int n = 2; n <= nmax; ++n) {
            int c = chi(static_cast<std::uint64_t>(n));
            if (c == 0) continue;
            ddouble ln = log(ddouble(static_cast<long long>(n)));
            ddouble t = ln * exp(-(s * ln));
            sum -= (c > 0) ? t : -t;
        }
        return sum;
    }
    ddouble sum(0.0);
    for (std::uint64_t a = 1; a < m; ++a) {
        int c = chi(a);
        if (c == 0) continue;
        ddouble h = hurwitz_zeta_sderiv(s, ddouble(static_cast<long long>(a)) / md, ctx);
        sum += (c > 0) ? h : -h;
    }
    return pow_dd(md, -s) * sum - lm * dirichlet_l(s, chi, ctx);
}

ddouble l_log_deriv_at_1(std::int64_t D, const PrecisionContext& ctx) {
    if (!(D < 0) || !is_fundamental_discriminant(D))
        throw std::invalid_argument("l_log_deriv_at_1: D must be a negative fundamental discriminant");
    QuadraticCharacter chi(D);
    ddouble A, B;
    character_sums_at_1(chi, ctx, A, B, true);
    if (std::abs(A.hi) < 1e-280)
        throw std::runtime_error("l_log_deriv_at_1: L(1,chi) vanished unexpectedly");
    return B / A - log(ddouble(static_cast<long long>(chi.modulus)));
}

ddouble agm(ddouble a, ddouble b, const PrecisionContext& ctx) {
    if (!(a.hi > 0.0) || !(b.hi > 0.0)) throw std::domain_error("agm: requires positive arguments");
    ddouble eps = ctx.eps();
    for (int i = 0; i < 64; ++i) {
        ddouble mean = ldexp(a + b, -1);
        ddouble geo = sqrt(a * b);
        a = mean;
        b = geo;
        ddouble diff = fabs(a - b);
        if (diff.hi <= eps.hi * std::abs(a.hi)) break;
    }
    return ldexp(a + b, -1);
}

ddouble euler_gamma() { return dd_euler_gamma(); }

ddouble gamma_function(ddouble x, const PrecisionContext&) {
    if (!(x.hi > 0.0)) throw std::domain_error("gamma_function: requires x > 0");
    // Stirling after shifting the argument above 32
    ddouble shift_log(0.0);
    int n = 0;
    while (x.hi + n < 32.0) {
        shift_log += log(x + static_cast<double>(n));
        ++n;
    }
    ddouble z = x + static_cast<double>(n);
    ddouble L = log(z);
    ddouble lg = (z - 0.5) * L - z + dd_log_sqrt_2pi();
    ddouble zinv = ddouble(1.0) / z;
    ddouble zinv2 = zinv * zinv;
    ddouble zpow = zinv;
    for (int j = 1; j <= 16; ++j) {
        ddouble term = (bern().over_2j[static_cast<size_t>(j - 1)] / static_cast<double>(2 * j - 1)) * zpow;
        lg += term;
        if (std::abs(term.hi) < 1e-38) break;
        zpow *= zinv2;
    }
    return exp(lg - shift_log);
}

} // namespace msets
