#include "msets/ddouble.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace msets {

ddouble::ddouble(long long v) {
    // |v| can exceed 2^53; split exactly
    double h = static_cast<double>(v);
    long long hv = static_cast<long long>(h);
    hi = h;
    lo = static_cast<double>(v - hv);
    double s, e;
    detail::quick_two_sum(hi, lo, s, e);
    hi = s;
    lo = e;
}

ddouble::ddouble(unsigned long long v) {
    double h = static_cast<double>(v);
    unsigned long long hv = static_cast<unsigned long long>(h);
    hi = h;
    lo = (v >= hv) ? static_cast<double>(v - hv) : -static_cast<double>(hv - v);
    double s, e;
    detail::quick_two_sum(hi, lo, s, e);
    hi = s;
    lo = e;
}

ddouble dd_floor(ddouble a) {
    double f = std::floor(a.hi);
    if (f != a.hi) return {f, 0.0};
    // hi is integral; floor decided by lo
    double g = std::floor(a.lo);
    double s, e;
    detail::quick_two_sum(f, g, s, e);
    return {s, e};
}

ddouble sqrt(ddouble a) {
    if (a.hi == 0.0 && a.lo == 0.0) return ddouble(0.0);
    if (a.hi < 0.0) throw std::domain_error("ddouble sqrt of negative value");
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    ddouble axd(ax);
    ddouble err = a - axd * axd;
    return axd + err.hi * (x * 0.5);
}

ddouble exp(ddouble a) {
    // exp(a) = 2^k * (exp(r/512))^512 with r = a - k*ln2
    if (a.hi > 709.0) throw std::overflow_error("ddouble exp overflow");
    if (a.hi < -709.0) return ddouble(0.0);
    const ddouble ln2 = dd_ln2();
    double k = std::floor(a.hi / ln2.hi + 0.5);
    ddouble r = a - ln2 * k;
    r = ldexp(r, -9);
    // Taylor for exp(r)-1, |r| <= 0.0007
    ddouble term = r;
    ddouble sum = r;
    for (int i = 2; i < 16; ++i) {
        term = term * r / static_cast<double>(i);
        sum += term;
        if (std::abs(term.hi) < 1e-40) break;
    }
    // unscale: (1+s) <- (1+s)^2, i.e. s <- s^2 + 2s, nine times
    for (int i = 0; i < 9; ++i) sum = sum * sum + ldexp(sum, 1);
    return ldexp(sum + 1.0, static_cast<int>(k));
}

ddouble log(ddouble a) {
    if (a.hi <= 0.0) throw std::domain_error("ddouble log of non-positive value");
    ddouble x(std::log(a.hi));
    // one Newton step: x <- x + a*exp(-x) - 1 doubles the accurate digits
    x = x + a * exp(-x) - 1.0;
    return x;
}

ddouble pow(ddouble a, long long n) {
    if (n == 0) return ddouble(1.0);
    bool inv = n < 0;
    unsigned long long m = inv ? static_cast<unsigned long long>(-(n + 1)) + 1ULL
                               : static_cast<unsigned long long>(n);
    ddouble base = a;
    ddouble acc(1.0);
    while (m) {
        if (m & 1ULL) acc *= base;
        m >>= 1;
        if (m) base *= base;
    }
    return inv ? ddouble(1.0) / acc : acc;
}

ddouble pow(ddouble a, ddouble b) { return exp(b * log(a)); }

ddouble dd_from_string(const char* s) {
    const char* p = s;
    while (*p == ' ') ++p;
    bool neg = false;
    if (*p == '+' || *p == '-') {
        neg = (*p == '-');
        ++p;
    }
    ddouble value(0.0);
    int frac_digits = 0;
    bool seen_digit = false, in_frac = false;
    for (; *p; ++p) {
        if (*p >= '0' && *p <= '9') {
            value = value * 10.0 + static_cast<double>(*p - '0');
            if (in_frac) ++frac_digits;
            seen_digit = true;
        } else if (*p == '.' && !in_frac) {
            in_frac = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw std::invalid_argument("ddouble parse: no digits");
    long long e10 = 0;
    if (*p == 'e' || *p == 'E') {
        char* end = nullptr;
        e10 = std::strtoll(p + 1, &end, 10);
        p = end;
    }
    e10 -= frac_digits;
    if (e10 != 0) {
        ddouble scale = pow(ddouble(10.0), e10);
        value *= scale;
    }
    return neg ? -value : value;
}

std::string to_string(ddouble a, int digits) {
    digits = std::clamp(digits, 1, 34);
    if (a.hi == 0.0 && a.lo == 0.0) return "0";
    bool neg = a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0);
    ddouble x = fabs(a);

    int e10 = static_cast<int>(std::floor(std::log10(x.hi)));
    x = x / pow(ddouble(10.0), static_cast<long long>(e10));
    // guard against off-by-one from the double log10
    while (x.hi >= 10.0) { x = x / 10.0; ++e10; }
    while (x.hi < 1.0) { x = x * 10.0; --e10; }

    std::vector<int> d(static_cast<size_t>(digits) + 1, 0);
    for (int i = 0; i <= digits; ++i) {
        int di = static_cast<int>(x.hi);
        d[static_cast<size_t>(i)] = di;
        x = (x - static_cast<double>(di)) * 10.0;
    }
    // fix stray digits outside [0,9], then round on the extra digit
    for (int i = digits; i > 0; --i) {
        if (d[static_cast<size_t>(i)] < 0) {
            d[static_cast<size_t>(i)] += 10;
            d[static_cast<size_t>(i - 1)] -= 1;
        } else if (d[static_cast<size_t>(i)] > 9) {
            d[static_cast<size_t>(i)] -= 10;
            d[static_cast<size_t>(i - 1)] += 1;
        }
    }
    if (d[static_cast<size_t>(digits)] >= 5) {
        int i = digits - 1;
        d[static_cast<size_t>(i)] += 1;
        while (i > 0 && d[static_cast<size_t>(i)] > 9) {
            d[static_cast<size_t>(i)] -= 10;
            d[static_cast<size_t>(i - 1)] += 1;
            --i;
        }
    }
    if (d[0] > 9) { // 9.99... rounded up
        d[0] = 1;
        for (int i = 1; i < digits; ++i) d[static_cast<size_t>(i)] = 0;
        ++e10;
    }

    std::string mant;
    for (int i = 0; i < digits; ++i) mant.push_back(static_cast<char>('0' + d[static_cast<size_t>(i)]));

    std::string out;
    if (neg) out.push_back('-');
    if (e10 >= -6 && e10 < digits + 6) {
        if (e10 >= 0) {
            int ip = e10 + 1;
            if (ip >= digits) {
                out += mant;
                out.append(static_cast<size_t>(ip - digits), '0');
            } else {
                out += mant.substr(0, static_cast<size_t>(ip));
                std::string frac = mant.substr(static_cast<size_t>(ip));
                while (!frac.empty() && frac.back() == '0') frac.pop_back();
                if (!frac.empty()) out += "." + frac;
            }
        } else {
            out += "0.";
            out.append(static_cast<size_t>(-e10 - 1), '0');
            std::string frac = mant;
            while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
            out += frac;
        }
    } else {
        out.push_back(mant[0]);
        std::string frac = mant.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        out += "e" + std::to_string(e10);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, ddouble a) { return os << to_string(a, 32); }

namespace {
ddouble make_const(const char* s) { return dd_from_string(s); }
} // namespace

ddouble dd_pi() {
    static const ddouble v = make_const("3.14159265358979323846264338327950288419716939937511");
    return v;
}

ddouble dd_ln2() {
    static const ddouble v = make_const("0.69314718055994530941723212145817656807550013436026");
    return v;
}

ddouble dd_euler_gamma() {
    static const ddouble v = make_const("0.57721566490153286060651209008240243104215933593992");
    return v;
}

ddouble dd_log_sqrt_2pi() {
    static const ddouble v = make_const("0.91893853320467274178032973640561763986139747363778");
    return v;
}

} // namespace msets
