// Declarative descriptions of multiplicative sets: every prime gets a rule
// assigning it a set of allowed exponents, and chi_S(n)=1 iff each prime
// power p^e || n has e allowed.  Rules are ordered, first match wins, and a
// final catch-all is mandatory.

#ifndef MSETS_SETSPEC_HPP
#define MSETS_SETSPEC_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msets/rational.hpp"

namespace msets {

struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExpKind { All, None, Even, Set };

struct ExpRule {
    ExpKind kind = ExpKind::All;
    std::vector<std::uint32_t> values; // Set: ascending finite exponents
    std::uint32_t tail_min = 0;        // Set: if >0, every e >= tail_min is allowed

    bool contains(std::uint64_t e) const;
    // k such that the rule admits exactly {k, 2k, 3k, ...}; nullopt otherwise
    std::optional<std::uint32_t> generator_power() const;
    std::string str() const;
};

struct PrimeCond {
    enum class Kind { Residue, Kronecker, ExplicitPrime, Predicate } kind = Kind::Residue;
    std::int64_t mod = 1;   // Residue: p = rem (mod mod)
    std::int64_t rem = 0;
    std::int64_t disc = 0;  // Kronecker: (disc/p) = value
    int value = 0;
    std::uint64_t prime = 0; // ExplicitPrime
    std::string key;         // Predicate

    bool matches(std::uint64_t p) const;
    bool matches_all_primes() const;
    std::string str() const;
};

struct SetRule {
    PrimeCond cond;
    ExpRule exp;
};

// chi on whole integers for sets defined through an external sieve (tau)
struct ComputedPredicate {
    std::uint64_t bound = 0;
    std::function<int(std::uint64_t)> chi; // defined on 1..bound
};

class SetDescriptor {
  public:
    SetDescriptor(std::string name, std::vector<SetRule> rules, Rational delta,
                  std::optional<double> rho_hint = std::nullopt);

    const std::string& name() const { return name_; }
    const std::vector<SetRule>& rules() const { return rules_; }
    Rational delta() const { return delta_; }
    std::optional<double> rho_hint() const { return rho_hint_; }
    bool is_predicate_set() const;
    const std::string& predicate_key() const;
    const std::shared_ptr<const ComputedPredicate>& predicate() const { return predicate_; }
    // Ramanujan's log-exponent for tau sets (density of q | tau(p)); equals
    // 1 - delta.  Set for tau builtins only.
    std::optional<Rational> ramanujan_exponent() const { return ramanujan_exponent_; }

    // value copy with the backing sieve attached
    SetDescriptor with_predicate(std::shared_ptr<const ComputedPredicate> pred) const;

    const ExpRule& classify_prime(std::uint64_t p) const;
    int chi_prime_power(std::uint64_t p, std::uint32_t e) const; // 0/1
    bool is_semigroup() const;

    std::uint64_t hash() const; // canonical content hash (cache key)
    std::string canonical() const;

  private:
    friend SetDescriptor builtin_descriptor(const std::string&);
    std::string name_;
    std::vector<SetRule> rules_;
    Rational delta_;
    std::optional<double> rho_hint_;
    std::optional<Rational> ramanujan_exponent_;
    std::shared_ptr<const ComputedPredicate> predicate_;
};

// chi_S(n) by factorization; factor_bound guards trial division cost
int chi(const SetDescriptor& desc, std::uint64_t n, std::uint64_t factor_bound = 1000000000000ULL);

Rational delta_of(const SetDescriptor& desc);

// parse either a builtin name ("sum2sq", "quadsem:-4", ...) or a descriptor
// document (newline-separated key=value fields)
SetDescriptor parse_descriptor(const std::string& text);

SetDescriptor builtin_descriptor(const std::string& name_with_params);
std::vector<std::string> builtin_names();

// density implied by residue/Kronecker rules, when computable by counting
// residue classes; nullopt for predicate sets or oversized moduli
std::optional<Rational> implied_prime_density(const std::vector<SetRule>& rules);

} // namespace msets

#endif
