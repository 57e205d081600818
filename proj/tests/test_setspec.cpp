#include "doctest.h"

#include <numeric>
#include <random>

#include "msets/setspec.hpp"
#include "msets/tau.hpp"

using namespace msets;

namespace {

// brute-force oracle: is n a sum of two integer squares?
bool two_squares(std::uint64_t n) {
    for (std::uint64_t u = 0; u * u <= n; ++u) {
        std::uint64_t r = n - u * u;
        std::uint64_t v = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(r)));
        for (std::uint64_t w = v > 0 ? v - 1 : 0; w <= v + 1; ++w)
            if (w * w == r) return true;
    }
    return false;
}

} // namespace

TEST_SUITE("setspec") {

TEST_CASE("builtin sum2sq: density and the three generator rules") {
    SetDescriptor d = parse_descriptor("sum2sq");
    CHECK(d.delta() == Rational(1, 2));
    CHECK(d.classify_prime(2).kind == ExpKind::All);
    CHECK(d.classify_prime(5).kind == ExpKind::All);
    CHECK(d.classify_prime(7).kind == ExpKind::Even);
    CHECK(d.classify_prime(3).kind == ExpKind::Even);
    CHECK(d.is_semigroup());
}

TEST_CASE("builtin naturals: catch-all, delta 1") {
    SetDescriptor d = parse_descriptor("naturals");
    CHECK(d.delta() == Rational(1));
    CHECK(d.rules().size() == 1);
    for (std::uint64_t p : {2ULL, 97ULL, 1009ULL}) CHECK(d.classify_prime(p).kind == ExpKind::All);
}

TEST_CASE("builtin nonhyp matches its generators") {
    SetDescriptor d = builtin_descriptor("nonhyp");
    CHECK(d.classify_prime(2).kind == ExpKind::All);
    CHECK(d.classify_prime(3).kind == ExpKind::All);
    CHECK(d.classify_prime(7).kind == ExpKind::All);
    CHECK(d.classify_prime(5).kind == ExpKind::None);
    CHECK(d.delta() == Rational(1, 2));
}

TEST_CASE("validation rejects missing catch-all and bad densities") {
    CHECK_THROWS_AS(parse_descriptor("name = broken\n"
                                     "rule = cond=residue 4 1; exp=all\n"
                                     "rule = cond=residue 4 1; exp=even\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_descriptor("name = wrongdelta\n"
                                     "delta = 1/3\n"
                                     "rule = cond=residue 4 1; exp=all\n"
                                     "rule = cond=residue 1 0; exp=none\n"),
                    ValidationError);
    CHECK_THROWS_AS(builtin_descriptor("nosuchset"), ValidationError);
    CHECK_THROWS_AS(builtin_descriptor("quadsem:-5"), ValidationError); // not 0,1 mod 4
    CHECK_THROWS_AS(builtin_descriptor("progsem:4:2"), ValidationError); // not coprime
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_descriptor("name = x\nrule = cond=residue 4; exp=all\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    try {
        parse_descriptor("name = x\n\nrule = cond=foo 1; exp=all\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("descriptor document round trip with derived delta") {
    const char* doc =
        "# sum of two squares, spelled out\n"
        "name = twosq\n"
        "rule = cond=prime 2; exp=all\n"
        "rule = cond=kronecker -4 1; exp=all\n"
        "rule = cond=kronecker -4 -1; exp=even\n"
        "rule = cond=residue 1 0; exp=none\n";
    SetDescriptor d = parse_descriptor(doc);
    CHECK(d.delta() == Rational(1, 2)); // derived from the rules
    for (std::uint64_t n = 1; n <= 500; ++n)
        CHECK(chi(d, n) == chi(builtin_descriptor("sum2sq"), n));
}

TEST_CASE("exponent set syntax with tail") {
    SetDescriptor d = parse_descriptor(
        "name = cubetail\n"
        "delta = 1\n"
        "rule = cond=residue 1 0; exp=set:[1,3],tail>=5\n");
    const ExpRule& r = d.classify_prime(11);
    CHECK(r.contains(1));
    CHECK(!r.contains(2));
    CHECK(r.contains(3));
    CHECK(!r.contains(4));
    CHECK(r.contains(5));
    CHECK(r.contains(1000));
}

TEST_CASE("chi: factorization route") {
    SetDescriptor s2 = builtin_descriptor("sum2sq");
    CHECK(chi(s2, 9) == 1);  // 3^2, even exponent
    CHECK(chi(s2, 3) == 0);
    CHECK(chi(s2, 1) == 1);
    for (const char* name : {"sum2sq", "hex", "nonhyp", "naturals", "quadsem:-7"})
        CHECK(chi(builtin_descriptor(name), 1) == 1);
    CHECK_THROWS(chi(s2, 0));
    CHECK_THROWS(chi(s2, 1ULL << 60)); // factorization bound
}

TEST_CASE("catalog cross-check against the two-squares oracle") {
    SetDescriptor d = builtin_descriptor("sum2sq");
    for (std::uint64_t n = 1; n <= 5000; ++n) CHECK(chi(d, n) == (two_squares(n) ? 1 : 0));
}

TEST_CASE("classify_prime examples") {
    SetDescriptor s2 = builtin_descriptor("sum2sq");
    CHECK(s2.classify_prime(7).kind == ExpKind::Even);
    CHECK(s2.classify_prime(5).kind == ExpKind::All);
    SetDescriptor nh = builtin_descriptor("nonhyp");
    CHECK(nh.classify_prime(2).kind == ExpKind::All);
}

TEST_CASE("delta_of: quoted and derived densities") {
    CHECK(delta_of(builtin_descriptor("sum2sq")) == Rational(1, 2));
    CHECK(delta_of(builtin_descriptor("progsem:3:1")) == Rational(1, 2));
    CHECK(delta_of(builtin_descriptor("progsem:7:1")) == Rational(1, 6));
    CHECK(delta_of(builtin_descriptor("phi-nondiv:5")) == Rational(3, 4));
    // Ramanujan's delta_5 = 1/4 is the density of 5 | tau(p); the set's prime
    // density is the complement 3/4 (see the mod-5 congruence tau(p) = p(1+p))
    SetDescriptor t5 = builtin_descriptor("tau-nondiv:5");
    CHECK(delta_of(t5) == Rational(3, 4));
    CHECK(*t5.ramanujan_exponent() == Rational(1, 4));
    SetDescriptor t691 = builtin_descriptor("tau-nondiv:691");
    CHECK(delta_of(t691) == Rational(689, 690));
    CHECK(*t691.ramanujan_exponent() == Rational(1, 690));
}

TEST_CASE("tau-nondiv without a known density demands an explicit one") {
    CHECK_THROWS_AS(builtin_descriptor("tau-nondiv:13"), ValidationError);
    SetDescriptor d = builtin_descriptor("tau-nondiv:13:1/2");
    CHECK(d.delta() == Rational(1, 2));
    CHECK(d.is_predicate_set());
    CHECK_THROWS(chi(d, 7)); // no backing sieve attached yet
}

TEST_CASE("phi-nondiv:q encodes q | phi(p^e) correctly") {
    SetDescriptor d = builtin_descriptor("phi-nondiv:3");
    // p = 3: E = {1} (phi(3)=2, phi(9)=6 divisible)
    CHECK(d.chi_prime_power(3, 1) == 1);
    CHECK(d.chi_prime_power(3, 2) == 0);
    // p = 7 = 1 mod 3: nothing allowed
    CHECK(d.chi_prime_power(7, 1) == 0);
    // p = 5 = 2 mod 3: everything allowed
    CHECK(d.chi_prime_power(5, 4) == 1);
    CHECK(!d.is_semigroup());
    // spot-check chi against direct phi computation
    auto phi_val = [](std::uint64_t n) {
        std::uint64_t r = n;
        for (std::uint64_t p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                r -= r / p;
                while (n % p == 0) n /= p;
            }
        if (n > 1) r -= r / n;
        return r;
    };
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        std::uint64_t ph = phi_val(n);
        CHECK(chi(d, n) == ((ph % 3) != 0 ? 1 : 0));
    }
}

TEST_CASE("multiplicativity on random coprime pairs, all builtins") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint64_t> u(1, 10000);
    for (const char* name : {"sum2sq", "hex", "nonhyp", "naturals", "quadsem:-4", "quadsem:-7",
                             "sprime:-4", "progsem:3:1", "progsem:4:3", "phi-nondiv:3"}) {
        SetDescriptor d = builtin_descriptor(name);
        int done = 0;
        while (done < 400) {
            std::uint64_t m = u(rng), n = u(rng);
            if (std::gcd(m, n) != 1) continue;
            ++done;
            CHECK(chi(d, m * n) == chi(d, m) * chi(d, n));
        }
    }
}

TEST_CASE("semigroup closure without coprimality") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<std::uint64_t> u(1, 1000);
    for (const char* name :
         {"sum2sq", "hex", "nonhyp", "quadsem:-4", "sprime:-4", "progsem:3:1"}) {
        SetDescriptor d = builtin_descriptor(name);
        CHECK(d.is_semigroup());
        int done = 0;
        while (done < 300) {
            std::uint64_t m = u(rng), n = u(rng);
            if (chi(d, m) != 1 || chi(d, n) != 1) continue;
            ++done;
            CHECK(chi(d, m * n) == 1);
        }
    }
}

TEST_CASE("chi(sum2sq, n) = chi(quadsem:-4, odd part of n)") {
    SetDescriptor s2 = builtin_descriptor("sum2sq");
    SetDescriptor q4 = builtin_descriptor("quadsem:-4");
    for (std::uint64_t n = 1; n <= 100000; ++n) {
        std::uint64_t odd = n;
        while (odd % 2 == 0) odd /= 2;
        CHECK(chi(s2, n) == chi(q4, odd));
    }
}

TEST_CASE("canonical hash distinguishes descriptors") {
    std::uint64_t h1 = builtin_descriptor("sum2sq").hash();
    std::uint64_t h2 = builtin_descriptor("hex").hash();
    std::uint64_t h3 = builtin_descriptor("sum2sq").hash();
    CHECK(h1 != h2);
    CHECK(h1 == h3);
}

TEST_CASE("predicate binding is a value operation") {
    auto table = std::make_shared<TauTable>(tau_mod_sieve(5, 2000));
    SetDescriptor bare = builtin_descriptor("tau-nondiv:5");
    SetDescriptor bound = bare.with_predicate(tau_predicate(table));
    CHECK_THROWS(chi(bare, 10));
    CHECK(chi(bound, 1) == 1);
    CHECK_THROWS(chi(bound, 4000)); // beyond sieve bound: error, not a guess
}

} // TEST_SUITE
