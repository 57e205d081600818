#include "msets/tau.hpp"

#include <stdexcept>
#include <thread>

namespace msets {

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t mod) {
    unsigned __int128 acc = 1, b = base % mod;
    while (e) {
        if (e & 1) acc = acc * b % mod;
        b = b * b % mod;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

namespace {

bool is_prime_small(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

struct SparseTerm {
    std::uint64_t offset; // k(k+1)/2
    std::uint64_t coeff;  // (-1)^k (2k+1) mod q, nonzero terms only
};

std::vector<SparseTerm> eta3_terms(std::uint64_t q, std::uint64_t deg) {
    std::vector<SparseTerm> t;
    for (std::uint64_t k = 0;; ++k) {
        std::uint64_t off = k * (k + 1) / 2;
        if (off > deg) break;
        std::uint64_t c = (2 * k + 1) % q;
        if (k & 1) c = (q - c) % q;
        if (c != 0) t.push_back({off, c});
    }
    return t;
}

// acc[j] += sum_k c_k * in[j - off_k] over one j-range
void sparse_pass_range(const std::vector<SparseTerm>& terms, const std::vector<std::uint32_t>& in,
                       std::vector<std::uint64_t>& acc, std::uint64_t lo, std::uint64_t hi) {
    for (const SparseTerm& t : terms) {
        if (t.offset >= hi) break;
        std::uint64_t start = std::max(lo, t.offset);
        const std::uint32_t* src = in.data() + (start - t.offset);
        std::uint64_t* dst = acc.data() + start;
        std::uint64_t len = hi - start;
        std::uint64_t c = t.coeff;
        for (std::uint64_t i = 0; i < len; ++i) dst[i] += c * src[i];
    }
}

} // namespace

TauTable tau_mod_sieve(std::uint64_t q, std::uint64_t N, int threads) {
    if (!is_prime_small(q)) throw std::domain_error("tau_mod_sieve: q must be prime");
    if (N < 1) throw std::domain_error("tau_mod_sieve: N must be >= 1");
    if (N > (1ULL << 27)) throw std::length_error("tau_mod_sieve: N exceeds capacity");
    const std::uint64_t deg = N; // need coefficients of x^0..x^{N-1}
    // overflow guard: q^2 * #sparse_terms must fit in 64 bits
    std::vector<SparseTerm> terms = eta3_terms(q, deg);
    if (!terms.empty()) {
        long double worst = static_cast<long double>(q - 1) * (q - 1) * static_cast<long double>(terms.size());
        if (worst > 1.7e18L) throw std::length_error("tau_mod_sieve: modulus too large for lazy reduction");
    }

    std::vector<std::uint32_t> cur(deg, 0);
    for (const SparseTerm& t : terms)
        if (t.offset < deg) cur[t.offset] = static_cast<std::uint32_t>(t.coeff);

    std::vector<std::uint64_t> acc(deg);
    int nt = std::max(1, threads);
    for (int pass = 0; pass < 7; ++pass) {
        std::fill(acc.begin(), acc.end(), 0);
        if (nt == 1) {
            sparse_pass_range(terms, cur, acc, 0, deg);
        } else {
            std::vector<std::thread> pool;
            std::uint64_t chunk = (deg + static_cast<std::uint64_t>(nt) - 1) / static_cast<std::uint64_t>(nt);
            for (int ti = 0; ti < nt; ++ti) {
                std::uint64_t lo = static_cast<std::uint64_t>(ti) * chunk;
                std::uint64_t hi = std::min(deg, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(sparse_pass_range, std::cref(terms), std::cref(cur), std::ref(acc), lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        for (std::uint64_t j = 0; j < deg; ++j) cur[j] = static_cast<std::uint32_t>(acc[j] % q);
    }

    std::vector<std::uint32_t> res(N + 1, 0);
    for (std::uint64_t n = 1; n <= N; ++n) res[n] = cur[n - 1]; // leading shift: Delta = x * (...)^8
    return TauTable(q, N, std::move(res));
}

double delta_empirical(const TauTable& table, std::uint64_t x) {
    if (x > table.bound()) throw std::out_of_range("delta_empirical: x exceeds table bound");
    std::uint64_t primes = 0, nondiv = 0;
    for_each_prime(x, [&](std::uint64_t p) {
        ++primes;
        nondiv += static_cast<std::uint64_t>(table.nondiv_chi(p));
    });
    if (primes == 0) throw std::domain_error("delta_empirical: no primes below x");
    return static_cast<double>(nondiv) / static_cast<double>(primes);
}

std::shared_ptr<const ComputedPredicate> tau_predicate(std::shared_ptr<const TauTable> table) {
    auto pred = std::make_shared<ComputedPredicate>();
    pred->bound = table->bound();
    pred->chi = [table](std::uint64_t n) { return table->nondiv_chi(n); };
    return pred;
}

std::vector<std::uint32_t> sigma11_mod(std::uint64_t m, std::uint64_t N) {
    std::vector<std::uint32_t> s(N + 1, 0);
    for (std::uint64_t d = 1; d <= N; ++d) {
        std::uint32_t pw = static_cast<std::uint32_t>(powmod(d % m, 11, m));
        for (std::uint64_t n = d; n <= N; n += d) {
            std::uint32_t v = s[n] + pw;
            s[n] = v >= m ? v - static_cast<std::uint32_t>(m) : v;
        }
    }
    return s;
}

} // namespace msets
