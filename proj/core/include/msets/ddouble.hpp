// Double-double arithmetic: an unevaluated sum of two IEEE doubles giving
// roughly 32 significant decimal digits.  The error-free transformations
// (two_sum, two_prod) follow Dekker and Knuth; the transcendental functions
// use argument reduction plus Taylor series with one final Newton step.
//
// Requires strict IEEE double semantics for +,-,*; build with
// -ffp-contract=off.

#ifndef MSETS_DDOUBLE_HPP
#define MSETS_DDOUBLE_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace msets {

struct ddouble {
    double hi{0.0};
    double lo{0.0};

    constexpr ddouble() = default;
    constexpr ddouble(double h) : hi(h), lo(0.0) {}
    constexpr ddouble(double h, double l) : hi(h), lo(l) {}
    explicit ddouble(int v) : hi(static_cast<double>(v)), lo(0.0) {}
    explicit ddouble(long v) : ddouble(static_cast<long long>(v)) {}
    explicit ddouble(long long v);
    explicit ddouble(unsigned long long v);

    double to_double() const { return hi + lo; }
    explicit operator double() const { return to_double(); }
};

namespace detail {

inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

// assumes |a| >= |b|
inline void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

} // namespace detail

inline ddouble operator+(ddouble a, ddouble b) {
    double s1, s2, t1, t2;
    detail::two_sum(a.hi, b.hi, s1, s2);
    detail::two_sum(a.lo, b.lo, t1, t2);
    s2 += t1;
    detail::quick_two_sum(s1, s2, s1, s2);
    s2 += t2;
    detail::quick_two_sum(s1, s2, s1, s2);
    return {s1, s2};
}

inline ddouble operator+(ddouble a, double b) {
    double s1, s2;
    detail::two_sum(a.hi, b, s1, s2);
    s2 += a.lo;
    detail::quick_two_sum(s1, s2, s1, s2);
    return {s1, s2};
}

inline ddouble operator+(double a, ddouble b) { return b + a; }

inline ddouble operator-(ddouble a) { return {-a.hi, -a.lo}; }
inline ddouble operator-(ddouble a, ddouble b) { return a + (-b); }
inline ddouble operator-(ddouble a, double b) { return a + (-b); }
inline ddouble operator-(double a, ddouble b) { return (-b) + a; }

inline ddouble operator*(ddouble a, ddouble b) {
    double p1, p2;
    detail::two_prod(a.hi, b.hi, p1, p2);
    p2 += a.hi * b.lo + a.lo * b.hi;
    detail::quick_two_sum(p1, p2, p1, p2);
    return {p1, p2};
}

inline ddouble operator*(ddouble a, double b) {
    double p1, p2;
    detail::two_prod(a.hi, b, p1, p2);
    p2 += a.lo * b;
    detail::quick_two_sum(p1, p2, p1, p2);
    return {p1, p2};
}

inline ddouble operator*(double a, ddouble b) { return b * a; }

inline ddouble operator/(ddouble a, ddouble b) {
    double q1 = a.hi / b.hi;
    ddouble r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    double s, e;
    detail::quick_two_sum(q1, q2, s, e);
    ddouble q{s, e};
    return q + q3;
}

inline ddouble operator/(ddouble a, double b) { return a / ddouble(b); }
inline ddouble operator/(double a, ddouble b) { return ddouble(a) / b; }

inline ddouble& operator+=(ddouble& a, ddouble b) { a = a + b; return a; }
inline ddouble& operator+=(ddouble& a, double b) { a = a + b; return a; }
inline ddouble& operator-=(ddouble& a, ddouble b) { a = a - b; return a; }
inline ddouble& operator-=(ddouble& a, double b) { a = a - b; return a; }
inline ddouble& operator*=(ddouble& a, ddouble b) { a = a * b; return a; }
inline ddouble& operator*=(ddouble& a, double b) { a = a * b; return a; }
inline ddouble& operator/=(ddouble& a, ddouble b) { a = a / b; return a; }

inline bool operator==(ddouble a, ddouble b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(ddouble a, ddouble b) { return !(a == b); }
inline bool operator<(ddouble a, ddouble b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(ddouble a, ddouble b) { return b < a; }
inline bool operator<=(ddouble a, ddouble b) { return !(b < a); }
inline bool operator>=(ddouble a, ddouble b) { return !(a < b); }

inline ddouble fabs(ddouble a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }
inline ddouble ldexp(ddouble a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

ddouble dd_floor(ddouble a);
ddouble sqrt(ddouble a);
ddouble exp(ddouble a);
ddouble log(ddouble a);
ddouble pow(ddouble a, long long n);
ddouble pow(ddouble a, ddouble b);

// value := significand parsed from a decimal string; throws on malformed input
ddouble dd_from_string(const char* s);

// round to `digits` significant decimal digits; fixed notation when the
// exponent is moderate, otherwise scientific
std::string to_string(ddouble a, int digits = 32);

std::ostream& operator<<(std::ostream& os, ddouble a);

// frequently used constants, correctly rounded from >=40-digit literals
ddouble dd_pi();
ddouble dd_ln2();
ddouble dd_euler_gamma();
ddouble dd_log_sqrt_2pi(); // log(2*pi)/2

} // namespace msets

#endif
