#include "msets/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace msets {

namespace {

double local_factor_log(const SetDescriptor& desc, std::uint64_t p) {
    const ExpRule& rule = desc.classify_prime(p);
    double dp = static_cast<double>(p);
    switch (rule.kind) {
        case ExpKind::All: return -std::log1p(-1.0 / dp);
        case ExpKind::None: return 0.0;
        case ExpKind::Even: return -std::log1p(-1.0 / (dp * dp));
        case ExpKind::Set: {
            double f = 1.0;
            for (std::uint32_t e : rule.values) f += std::pow(dp, -static_cast<double>(e));
            if (rule.tail_min > 0)
                f += std::pow(dp, 1.0 - static_cast<double>(rule.tail_min)) / (dp - 1.0);
            return std::log(f);
        }
    }
    return 0.0;
}

double local_factor_log_predicate(const SetDescriptor& desc, std::uint64_t p) {
    const auto& pred = desc.predicate();
    double f = 1.0;
    double weight = 1.0;
    std::uint64_t pe = 1;
    for (;;) {
        if (pe > pred->bound / p) break;
        pe *= p;
        weight /= static_cast<double>(p);
        if (pred->chi(pe)) f += weight;
    }
    return std::log(f);
}

} // namespace

C0Result wirsing_c0_direct(const SetDescriptor& desc, std::uint64_t P) {
    double delta = desc.delta().to_double();
    if (!(delta > 0.0)) throw std::domain_error("wirsing_c0: requires delta > 0");
    if (desc.is_predicate_set()) {
        const auto& pred = desc.predicate();
        if (!pred) throw std::runtime_error(desc.name() + ": predicate set has no backing sieve attached");
        P = std::min(P, pred->bound);
    }
    const std::uint64_t p1 = std::max<std::uint64_t>(100, P / 100);
    const std::uint64_t p2 = std::max<std::uint64_t>(p1 + 1, P / 10);

    double logsum = 0.0, comp = 0.0;
    double snap1 = 0.0, snap2 = 0.0;
    bool done1 = false, done2 = false;
    for_each_prime(P, [&](std::uint64_t p) {
        if (!done1 && p > p1) {
            snap1 = logsum;
            done1 = true;
        }
        if (!done2 && p > p2) {
            snap2 = logsum;
            done2 = true;
        }
        double term = (desc.is_predicate_set() ? local_factor_log_predicate(desc, p)
                                               : local_factor_log(desc, p)) +
                      delta * std::log1p(-1.0 / static_cast<double>(p));
        double y = term - comp;
        double t = logsum + y;
        comp = (t - logsum) - y;
        logsum = t;
    });
    if (!done1) snap1 = logsum;
    if (!done2) snap2 = logsum;

    PrecisionContext ctx;
    double inv_gamma_delta = 1.0 / gamma_function(ddouble(delta), ctx).to_double();
    double v1 = std::exp(snap1) * inv_gamma_delta;
    double v2 = std::exp(snap2) * inv_gamma_delta;
    double v3 = std::exp(logsum) * inv_gamma_delta;

    // A fit v(P) = c + a/log P + b/log^2 P through the three snapshots probes
    // how far a Mertens-like drift could still move the product.  The partial
    // product itself converges much faster for character-driven sets (its
    // 1/log-type terms cancel against the (1-1/p)^delta compensator), so the
    // raw value at P is the estimate and the fit only feeds the error bar.
    double u1 = 1.0 / std::log(static_cast<double>(p1));
    double u2 = 1.0 / std::log(static_cast<double>(p2));
    double u3 = 1.0 / std::log(static_cast<double>(P));
    double c = v1 * (u2 * u3) / ((u2 - u1) * (u3 - u1)) + v2 * (u1 * u3) / ((u1 - u2) * (u3 - u2)) +
               v3 * (u1 * u2) / ((u1 - u3) * (u2 - u3));

    C0Result r;
    r.value = ddouble(v3);
    r.error = std::abs(c - v3) + 1e-9;
    r.method = "direct";
    return r;
}

// ---------------------------------------------------------------------------
// accelerated route
// ---------------------------------------------------------------------------

namespace {

struct CharPattern {
    std::int64_t D = 0;
    ExpKind plus = ExpKind::None;  // exponent rule on split primes, (D/p)=1
    ExpKind minus = ExpKind::None; // on inert primes, (D/p)=-1
    std::vector<std::uint64_t> override_primes; // explicit rules and p | D
};

std::optional<std::int64_t> candidate_discriminant(const SetDescriptor& desc) {
    std::optional<std::int64_t> D;
    auto propose = [&](std::int64_t d) -> bool {
        if (D && *D != d) return false;
        D = d;
        return true;
    };
    for (const SetRule& r : desc.rules()) {
        switch (r.cond.kind) {
            case PrimeCond::Kind::Kronecker:
                if (!propose(r.cond.disc)) return std::nullopt;
                break;
            case PrimeCond::Kind::Residue:
                if (r.cond.mod == 1) break; // catch-all
                if (r.cond.mod == 4) {
                    if (!propose(-4)) return std::nullopt;
                } else if (r.cond.mod == 3) {
                    if (!propose(-3)) return std::nullopt;
                } else {
                    return std::nullopt;
                }
                break;
            case PrimeCond::Kind::ExplicitPrime:
                break;
            case PrimeCond::Kind::Predicate:
                return std::nullopt;
        }
    }
    return D;
}

std::optional<CharPattern> detect_pattern(const SetDescriptor& desc) {
    std::optional<std::int64_t> D = candidate_discriminant(desc);
    if (!D || !is_fundamental_discriminant(*D)) return std::nullopt;
    CharPattern pat;
    pat.D = *D;
    std::uint64_t m = static_cast<std::uint64_t>(*D < 0 ? -*D : *D);

    for (const SetRule& r : desc.rules())
        if (r.cond.kind == PrimeCond::Kind::ExplicitPrime) pat.override_primes.push_back(r.cond.prime);
    for (std::uint64_t p = 2; p <= m; ++p)
        if (m % p == 0 && std::find(pat.override_primes.begin(), pat.override_primes.end(), p) ==
                              pat.override_primes.end()) {
            bool prime = p >= 2;
            for (std::uint64_t d = 2; d * d <= p; ++d)
                if (p % d == 0) prime = false;
            if (prime) pat.override_primes.push_back(p);
        }

    // classify witness primes for each character class and verify on a prefix
    bool have_plus = false, have_minus = false;
    PrimeTable small = primes_up_to(1000);
    for (std::uint32_t p : small.primes) {
        if (std::find(pat.override_primes.begin(), pat.override_primes.end(), p) !=
            pat.override_primes.end())
            continue;
        int cls = kronecker_symbol(pat.D, p);
        if (cls == 0) return std::nullopt; // non-override ramified prime: not our pattern
        const ExpRule& rule = desc.classify_prime(p);
        if (rule.kind == ExpKind::Set) return std::nullopt;
        if (cls == 1) {
            if (!have_plus) {
                pat.plus = rule.kind;
                have_plus = true;
            } else if (pat.plus != rule.kind) {
                return std::nullopt;
            }
        } else {
            if (!have_minus) {
                pat.minus = rule.kind;
                have_minus = true;
            } else if (pat.minus != rule.kind) {
                return std::nullopt;
            }
        }
    }
    if (!have_plus || !have_minus) return std::nullopt;
    return pat;
}

std::vector<std::uint64_t> divisor_primes(std::int64_t D) {
    std::uint64_t m = static_cast<std::uint64_t>(D < 0 ? -D : D);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        out.push_back(p);
        while (m % p == 0) m /= p;
    }
    if (m > 1) out.push_back(m);
    return out;
}

// prod_{p|D} (1 - p^-s)
ddouble ramified_product(std::int64_t D, ddouble s) {
    ddouble r(1.0);
    for (std::uint64_t p : divisor_primes(D))
        r *= ddouble(1.0) - exp(-(s * log(ddouble(static_cast<long long>(p)))));
    return r;
}

// Q(2^j) = prod_{(D/p)=-1} (1 - p^-2^j)^-1 by downward doubling from Q(2^8) ~ 1
ddouble inert_euler_factor(std::int64_t D, int j, const PrecisionContext& ctx) {
    QuadraticCharacter chi(D);
    ddouble q(1.0);
    for (int k = 7; k >= j; --k) {
        ddouble s(std::ldexp(1.0, k));
        q = sqrt(zeta(s, ctx) * ramified_product(D, s) * q / dirichlet_l(s, chi, ctx));
    }
    return q;
}

double local_factor_at_1(ExpKind kind, std::uint64_t p) {
    double dp = static_cast<double>(p);
    switch (kind) {
        case ExpKind::All: return dp / (dp - 1.0);
        case ExpKind::Even: return dp * dp / (dp * dp - 1.0);
        case ExpKind::None: return 1.0;
        case ExpKind::Set: break;
    }
    throw std::logic_error("local_factor_at_1: unsupported rule");
}

double rule_factor_at_1(const ExpRule& rule, std::uint64_t p) {
    double dp = static_cast<double>(p);
    switch (rule.kind) {
        case ExpKind::All:
        case ExpKind::Even:
        case ExpKind::None:
            return local_factor_at_1(rule.kind, p);
        case ExpKind::Set: {
            double f = 1.0;
            for (std::uint32_t e : rule.values) f += std::pow(dp, -static_cast<double>(e));
            if (rule.tail_min > 0)
                f += std::pow(dp, 1.0 - static_cast<double>(rule.tail_min)) / (dp - 1.0);
            return f;
        }
    }
    return 1.0;
}

} // namespace

C0Result wirsing_c0_accelerated(const SetDescriptor& desc, const PrecisionContext& ctx) {
    std::optional<CharPattern> pat = detect_pattern(desc);
    if (!pat)
        throw std::invalid_argument(desc.name() + ": no quadratic-character pattern; use the direct route");

    Rational delta(0);
    if (pat->plus == ExpKind::All) delta = delta + Rational(1, 2);
    if (pat->minus == ExpKind::All) delta = delta + Rational(1, 2);
    if (delta.num == 0)
        throw std::invalid_argument(desc.name() + ": accelerated route needs delta > 0");
    if (delta != desc.delta())
        throw std::logic_error(desc.name() + ": pattern density disagrees with declared delta");

    QuadraticCharacter chi(pat->D);
    ddouble q2 = inert_euler_factor(pat->D, 1, ctx);
    ddouble l1 = dirichlet_l(ddouble(1.0), chi, ctx);
    ddouble ram = ramified_product(pat->D, ddouble(1.0)); // prod_{p|D} (1 - 1/p)

    ddouble value(1.0);
    if (pat->plus == ExpKind::All) value *= sqrt(l1 * ram / q2);
    if (pat->plus == ExpKind::Even) {
        // split-prime even factor: A_+(2) = sqrt(zeta(2) prod_{p|D}(1-p^-2) L(2,chi) / Q(4))
        ddouble s2(2.0);
        ddouble q4 = inert_euler_factor(pat->D, 2, ctx);
        value *= sqrt(zeta(s2, ctx) * ramified_product(pat->D, s2) * dirichlet_l(s2, chi, ctx) / q4);
    }
    if (pat->minus == ExpKind::All) value *= sqrt(ram * q2 / l1);
    if (pat->minus == ExpKind::Even) value *= q2;

    for (std::uint64_t p : pat->override_primes) {
        std::uint64_t m = static_cast<std::uint64_t>(pat->D < 0 ? -pat->D : pat->D);
        int cls = kronecker_symbol(pat->D, static_cast<std::int64_t>(p));
        double base = (m % p == 0 || cls == 0) ? 1.0
                      : local_factor_at_1(cls == 1 ? pat->plus : pat->minus, p);
        double actual = rule_factor_at_1(desc.classify_prime(p), p);
        value *= ddouble(actual / base);
    }

    value = value / gamma_function(ddouble(delta.to_double()), ctx);

    C0Result r;
    r.value = value;
    r.error = 1e-20; // doubling truncation at k=7 plus Euler-Maclaurin remainders
    r.method = "accelerated";
    return r;
}

C0Result wirsing_c0(const SetDescriptor& desc, const PrecisionContext& ctx, std::uint64_t P) {
    try {
        return wirsing_c0_accelerated(desc, ctx);
    } catch (const std::invalid_argument&) {
        return wirsing_c0_direct(desc, P);
    }
}

ddouble c1_coefficient(Rational delta, ddouble gamma_s) {
    ddouble one_minus_delta = ddouble(1.0) - ddouble(delta.num) / ddouble(delta.den);
    return one_minus_delta * (ddouble(1.0) - gamma_s);
}

double landau_approx(double delta, double c0, double x) {
    if (!(x > 2.0)) throw std::domain_error("landau_approx: requires x > 2");
    return c0 * x * std::pow(std::log(x), delta - 1.0);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fb, double fm, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fb, fm, whole, tol, 48);
}

} // namespace

double ramanujan_approx(double delta, double c0, double x, double rel_tol) {
    if (!(x > 2.0)) throw std::domain_error("ramanujan_approx: requires x > 2");
    // substitute u = log t: int_2^x log^{d-1} t dt = int u^{d-1} e^u du
    auto f = [delta](double u) { return std::pow(u, delta - 1.0) * std::exp(u); };
    double a = std::log(2.0), b = std::log(x);
    double rough = std::pow(b, delta - 1.0) * (x - 2.0);
    double integral = integrate(f, a, b, std::abs(rough) * rel_tol);
    return c0 * integral;
}

const char* winner_name(Winner w) {
    switch (w) {
        case Winner::Landau: return "Landau";
        case Winner::Ramanujan: return "Ramanujan";
        case Winner::Undecided: return "undecided";
    }
    return "?";
}

Winner winner(const EKEstimate& gamma_s) {
    double v = gamma_s.value.to_double();
    if (v + gamma_s.error < 0.5) return Winner::Ramanujan;
    if (v - gamma_s.error > 0.5) return Winner::Landau;
    return Winner::Undecided;
}

ApproxComparison empirical_compare(const SetDescriptor& desc, const std::vector<double>& xs,
                                   const CharTable& table, double c0, const EKEstimate& gamma_s) {
    ApproxComparison cmp;
    cmp.set = desc.name();
    cmp.delta = desc.delta().to_double();
    cmp.c0 = c0;
    cmp.declared = winner(gamma_s);
    for (double x : xs) {
        if (x > static_cast<double>(table.bound()))
            throw std::out_of_range("empirical_compare: sample point beyond table bound");
        CompareRow row;
        row.x = x;
        row.count = table.count(x);
        row.landau = landau_approx(cmp.delta, c0, x);
        row.ramanujan = ramanujan_approx(cmp.delta, c0, x);
        row.err_landau = std::abs(static_cast<double>(row.count) - row.landau);
        row.err_ramanujan = std::abs(static_cast<double>(row.count) - row.ramanujan);
        row.theta = static_cast<double>(row.count) - row.ramanujan;
        cmp.rows.push_back(row);
    }
    // growth exponent of |theta|: slope of log|theta| vs log x
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int k = 0;
    for (const CompareRow& row : cmp.rows) {
        if (row.theta == 0.0) continue;
        double lx = std::log(row.x), ly = std::log(std::abs(row.theta));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++k;
    }
    if (k >= 2 && sxx * k - sx * sx != 0.0)
        cmp.theta_growth_exponent = (sxy * k - sx * sy) / (sxx * k - sx * sx);
    return cmp;
}

std::string ApproxComparison::to_csv() const {
    std::ostringstream os;
    os << "x,S,landau,ramanujan,err_l,err_r,theta\n";
    os.setf(std::ios::fmtflags(0), std::ios::floatfield);
    os.precision(12);
    for (const CompareRow& r : rows)
        os << r.x << "," << r.count << "," << r.landau << "," << r.ramanujan << "," << r.err_landau
           << "," << r.err_ramanujan << "," << r.theta << "\n";
    return os.str();
}

} // namespace msets
