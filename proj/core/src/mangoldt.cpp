#include "msets/mangoldt.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "msets/sieve.hpp"

namespace msets {

namespace {

std::vector<int> chi_row(const SetDescriptor& desc, std::uint64_t p, std::uint32_t emax) {
    std::vector<int> chi(emax + 1, 0);
    chi[0] = 1;
    for (std::uint32_t j = 1; j <= emax; ++j) chi[j] = desc.chi_prime_power(p, j);
    return chi;
}

std::vector<std::int64_t> coeffs_up_to(const std::vector<int>& chi, std::uint32_t emax) {
    std::vector<std::int64_t> c(emax + 1, 0);
    for (std::uint32_t e = 1; e <= emax; ++e) {
        std::int64_t v = static_cast<std::int64_t>(e) * chi[e];
        for (std::uint32_t j = 1; j < e; ++j) v -= c[j] * chi[e - j];
        c[e] = v;
    }
    return c;
}

} // namespace

MangoldtValue lambda_recursive(const SetDescriptor& desc, std::uint64_t p, std::uint32_t e) {
    if (e < 1) throw std::domain_error("lambda_recursive: exponent must be >= 1");
    std::vector<int> chi = chi_row(desc, p, e);
    std::vector<std::int64_t> c = coeffs_up_to(chi, e);
    MangoldtValue v;
    v.p = p;
    v.e = e;
    v.coeff = c[e];
    v.value = static_cast<double>(c[e]) * std::log(static_cast<double>(p));
    return v;
}

Rational lambda_closed_coeff(const SetDescriptor& desc, std::uint64_t p, std::uint32_t e) {
    if (e < 1 || e > 12) throw std::domain_error("lambda_closed_coeff: exponent must be in 1..12");
    std::vector<int> chi = chi_row(desc, p, e);
    // comp[m][t]: compositions of t into m allowed parts, weighted by chi
    std::vector<std::vector<std::int64_t>> comp(e + 1, std::vector<std::int64_t>(e + 1, 0));
    comp[0][0] = 1;
    for (std::uint32_t m = 1; m <= e; ++m)
        for (std::uint32_t t = 1; t <= e; ++t) {
            std::int64_t acc = 0;
            for (std::uint32_t k = 1; k <= t; ++k)
                if (chi[k]) acc += comp[m - 1][t - k];
            comp[m][t] = acc;
        }
    Rational sum(0);
    for (std::uint32_t m = 1; m <= e; ++m) {
        if (comp[m][e] == 0) continue;
        Rational term(comp[m][e], static_cast<std::int64_t>(m));
        sum = (m % 2 == 1) ? sum + term : sum - term;
    }
    return Rational(static_cast<std::int64_t>(e)) * sum;
}

MangoldtValue lambda_closed(const SetDescriptor& desc, std::uint64_t p, std::uint32_t e) {
    Rational c = lambda_closed_coeff(desc, p, e);
    MangoldtValue v;
    v.p = p;
    v.e = e;
    if (c.den != 1) throw std::logic_error("lambda_closed: coefficient is not an integer");
    v.coeff = c.num;
    v.value = static_cast<double>(v.coeff) * std::log(static_cast<double>(p));
    return v;
}

namespace {

void partitions_rec(std::uint32_t remaining, std::uint32_t max_part, std::vector<std::uint32_t>& mult,
                    const std::vector<int>& chi, Rational& acc) {
    if (remaining == 0) {
        std::int64_t total = 0;
        for (std::uint32_t i = 1; i < mult.size(); ++i) total += mult[i];
        if (total == 0) return;
        // multinomial (sum l)! / prod l_i!
        std::int64_t multinomial = 1;
        std::int64_t used = 0;
        for (std::uint32_t i = 1; i < mult.size(); ++i) {
            for (std::uint32_t r = 1; r <= mult[i]; ++r) {
                ++used;
                multinomial = multinomial * used / static_cast<std::int64_t>(r);
            }
        }
        bool chi_ok = true;
        for (std::uint32_t i = 1; i < mult.size(); ++i)
            if (mult[i] > 0 && chi[i] == 0) chi_ok = false;
        if (!chi_ok) return;
        Rational term(multinomial, total);
        acc = (total % 2 == 1) ? acc + term : acc - term;
        return;
    }
    for (std::uint32_t part = std::min(remaining, max_part); part >= 1; --part) {
        ++mult[part];
        partitions_rec(remaining - part, part, mult, chi, acc);
        --mult[part];
    }
}

} // namespace

Rational lambda_partition_coeff(const SetDescriptor& desc, std::uint64_t p, std::uint32_t e) {
    if (e < 1 || e > 6) throw std::domain_error("lambda_partition_coeff: exponent must be in 1..6");
    std::vector<int> chi = chi_row(desc, p, e);
    Rational w(0);
    std::vector<std::uint32_t> mult(e + 1, 0);
    partitions_rec(e, e, mult, chi, w);
    return w * Rational(static_cast<std::int64_t>(e));
}

double mangoldt_partial_sum(const SetDescriptor& desc, std::uint64_t x) {
    if (x < 1) return 0.0;
    double sum = 0.0, comp = 0.0;
    auto add = [&](double t) {
        double y = t - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    };
    for_each_prime(x, [&](std::uint64_t p) {
        double logp = std::log(static_cast<double>(p));
        std::uint64_t pe = p;
        std::uint32_t emax = 1;
        while (pe <= x / p) {
            pe *= p;
            ++emax;
        }
        std::vector<int> chi = chi_row(desc, p, emax);
        std::vector<std::int64_t> c = coeffs_up_to(chi, emax);
        std::uint64_t q = 1;
        for (std::uint32_t e = 1; e <= emax; ++e) {
            q *= p;
            if (c[e] != 0) add(static_cast<double>(c[e]) * logp / static_cast<double>(q));
        }
    });
    return sum;
}

} // namespace msets
