#include "msets/ek.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "msets/mangoldt.hpp"
#include "msets/sieve.hpp"

namespace msets {

const char* ek_method_name(EkMethod m) {
    switch (m) {
        case EkMethod::PartialSum: return "partial-sum";
        case EkMethod::LFunction: return "lfunction";
        case EkMethod::Derived: return "derived";
    }
    return "?";
}

namespace {

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

// log p / (p^s - 1) as log p * p^-s / (1 - p^-s), safe for large s
ddouble log_over_ps_minus_1(std::uint64_t p, ddouble s) {
    ddouble lp = log(ddouble(static_cast<long long>(p)));
    ddouble pms = exp(-(s * lp));
    return lp * pms / (ddouble(1.0) - pms);
}

ddouble ramified_sum_at(std::int64_t D, ddouble s) {
    ddouble sum(0.0);
    for (std::uint64_t p : distinct_prime_factors(static_cast<std::uint64_t>(D < 0 ? -D : D)))
        sum += log_over_ps_minus_1(p, s);
    return sum;
}

void require_negative_fundamental(std::int64_t D, const char* who) {
    if (!(D < 0) || !is_fundamental_discriminant(D))
        throw std::invalid_argument(std::string(who) + ": D must be a negative fundamental discriminant");
}

} // namespace

ddouble ramified_log_sum(std::int64_t D) { return ramified_sum_at(D, ddouble(1.0)); }

ddouble prime_square_sum(std::int64_t D, const PrecisionContext& ctx, int* terms_used,
                         double* tail_bound) {
    require_negative_fundamental(D, "prime_square_sum");
    QuadraticCharacter chi(D);
    const double stop = ctx.eps().hi * 1e-2;
    ddouble sum(0.0);
    int k = 1;
    for (; k <= 9; ++k) {
        ddouble s(std::ldexp(1.0, k)); // 2^k
        ddouble term = dirichlet_l_prime(s, chi, ctx) / dirichlet_l(s, chi, ctx) -
                       zeta_log_deriv(s, ctx) - ramified_sum_at(D, s);
        sum += term;
        if (std::abs(term.hi) < stop) break;
    }
    if (k > 9) throw std::runtime_error("prime_square_sum: doubling series failed to converge");
    // dropped tail is sum_{(D/p)=-1} 2 log p/(p^{2^{k+1}}-1) <= -2 zeta'/zeta(2^{k+1})
    ddouble snext(std::ldexp(1.0, k + 1));
    double bound = std::abs(2.0 * zeta_log_deriv(snext, ctx).hi);
    if (terms_used) *terms_used = k;
    if (tail_bound) *tail_bound = bound;
    return sum;
}

ddouble char_log_prime_sum(std::int64_t D, const PrecisionContext& ctx) {
    require_negative_fundamental(D, "char_log_prime_sum");
    QuadraticCharacter chi(D);
    const double stop = ctx.eps().hi * 1e-2;
    ddouble sum = -l_log_deriv_at_1(D, ctx);
    for (int k = 1; k <= 9; ++k) {
        ddouble s(std::ldexp(1.0, k));
        ddouble term = zeta_log_deriv(s, ctx) + ramified_sum_at(D, s) -
                       dirichlet_l_prime(s, chi, ctx) / dirichlet_l(s, chi, ctx);
        sum += term;
        if (std::abs(term.hi) < stop) return sum;
    }
    throw std::runtime_error("char_log_prime_sum: doubling series failed to converge");
}

EKEstimate ek_quadratic(std::int64_t D, const PrecisionContext& ctx) {
    require_negative_fundamental(D, "ek_quadratic");
    int terms = 0;
    double tail = 0.0;
    ddouble h = prime_square_sum(D, ctx, &terms, &tail);
    ddouble two_gamma = euler_gamma() + l_log_deriv_at_1(D, ctx) - h + ramified_log_sum(D);
    EKEstimate e;
    e.set = "quadsem:" + std::to_string(D);
    e.value = ldexp(two_gamma, -1);
    e.method = EkMethod::LFunction;
    e.truncation = "doubling series, k<=" + std::to_string(terms);
    e.error = 0.5 * tail + 1e-27;
    e.rigorous = true;
    return e;
}

EKEstimate ek_sum_two_squares(const PrecisionContext& ctx) {
    EKEstimate e = ek_quadratic(-4, ctx);
    e.set = "sum2sq";
    e.value = e.value - dd_ln2();
    e.method = EkMethod::LFunction;
    return e;
}

ddouble gamma_sum_two_squares_agm(const PrecisionContext& ctx) {
    // L'/L(1,chi_-4) = log(M(1,sqrt2)^2 e^gamma / 2) = 2 log M + gamma - log 2,
    // and sum_{p=3 (4)} log p/(p^2-1) is half the inert-prime square sum
    ddouble m = agm(ddouble(1.0), sqrt(ddouble(2.0)), ctx);
    ddouble ll = ldexp(log(m), 1) + euler_gamma() - dd_ln2();
    ddouble h = prime_square_sum(-4, ctx);
    return ldexp(euler_gamma() + ll - dd_ln2() - h, -1);
}

EKEstimate ek_nonhypotenuse(const PrecisionContext& ctx) {
    EKEstimate sb = ek_sum_two_squares(ctx);
    EKEstimate e;
    e.set = "nonhyp";
    e.value = sb.value - l_log_deriv_at_1(-4, ctx);
    e.method = EkMethod::LFunction;
    e.truncation = sb.truncation;
    e.error = sb.error + 1e-27;
    e.rigorous = true;
    return e;
}

EKEstimate ek_sprime_quadratic(std::int64_t D, const PrecisionContext& ctx) {
    EKEstimate sd = ek_quadratic(D, ctx);
    EKEstimate e;
    e.set = "sprime:" + std::to_string(D);
    e.value = sd.value - l_log_deriv_at_1(D, ctx);
    e.method = EkMethod::LFunction;
    e.truncation = sd.truncation;
    e.error = sd.error + 1e-27;
    e.rigorous = true;
    return e;
}

ddouble cilleruelo_j(const PrecisionContext& ctx) {
    EKEstimate nh = ek_nonhypotenuse(ctx);
    return ldexp(euler_gamma(), 1) - 1.0 - ddouble(1.5) * dd_ln2() - ldexp(nh.value, 1);
}

ddouble cilleruelo_j_direct(const PrecisionContext& ctx) {
    return euler_gamma() - 1.0 - ldexp(dd_ln2(), -1) - char_log_prime_sum(-4, ctx);
}

EKEstimate ek_partial_sum(const SetDescriptor& desc, std::uint64_t x) {
    if (x < 100) throw std::domain_error("ek_partial_sum: requires x >= 100");
    double delta = desc.delta().to_double();
    double estimate;
    if (desc.is_semigroup()) {
        double sum = 0.0, comp = 0.0;
        auto add = [&](double t) {
            double y = t - comp;
            double s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        };
        for_each_prime(x, [&](std::uint64_t p) {
            std::optional<std::uint32_t> k = desc.classify_prime(p).generator_power();
            if (!k) return;
            // generator q_i = p^k, counted while q_i <= x
            std::uint64_t pe = 1;
            for (std::uint32_t i = 0; i < *k; ++i) {
                if (pe > x / p) return;
                pe *= p;
            }
            add(static_cast<double>(*k) * std::log(static_cast<double>(p)) /
                (static_cast<double>(pe) - 1.0));
        });
        estimate = delta * std::log(static_cast<double>(x)) - sum;
    } else {
        estimate = delta * std::log(static_cast<double>(x)) - mangoldt_partial_sum(desc, x);
    }
    EKEstimate e;
    e.set = desc.name();
    e.value = ddouble(estimate);
    e.method = EkMethod::PartialSum;
    e.truncation = "x=" + std::to_string(x);
    e.error = 1.0 / std::log(static_cast<double>(x)); // heuristic, unknown constant
    e.rigorous = false;
    return e;
}

BloepReport consistency_bloep(std::uint64_t q, std::uint64_t x) {
    if (q < 3 || q % 2 == 0) throw std::domain_error("consistency_bloep: q must be an odd prime");
    SetDescriptor prog = builtin_descriptor("progsem:" + std::to_string(q) + ":1");
    SetDescriptor phi = builtin_descriptor("phi-nondiv:" + std::to_string(q));
    BloepReport r;
    r.q = q;
    r.x = x;
    r.gamma_prog = ek_partial_sum(prog, x).value.to_double();
    r.gamma_phi = ek_partial_sum(phi, x).value.to_double();
    double lq = std::log(static_cast<double>(q));
    r.expected = dd_euler_gamma().to_double() + 2.0 * lq / (static_cast<double>(q) * static_cast<double>(q) - 1.0);
    r.residual = r.gamma_prog + r.gamma_phi - r.expected;
    return r;
}

} // namespace msets
