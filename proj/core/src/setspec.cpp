#include "msets/setspec.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "msets/lfun.hpp"

namespace msets {

bool ExpRule::contains(std::uint64_t e) const {
    if (e == 0) return false;
    switch (kind) {
        case ExpKind::All: return true;
        case ExpKind::None: return false;
        case ExpKind::Even: return (e % 2) == 0;
        case ExpKind::Set:
            if (tail_min > 0 && e >= tail_min) return true;
            return std::binary_search(values.begin(), values.end(), e);
    }
    return false;
}

std::optional<std::uint32_t> ExpRule::generator_power() const {
    switch (kind) {
        case ExpKind::All: return 1;
        case ExpKind::Even: return 2;
        case ExpKind::None: return std::nullopt;
        case ExpKind::Set: break;
    }
    // multiples of k can only be finitely represented with a tail when k=1
    if (tail_min > 0) {
        std::uint32_t need = 1;
        for (std::uint32_t v : values) {
            if (v != need) return std::nullopt;
            ++need;
        }
        return need >= tail_min ? std::optional<std::uint32_t>(1) : std::nullopt;
    }
    return std::nullopt;
}

std::string ExpRule::str() const {
    switch (kind) {
        case ExpKind::All: return "all";
        case ExpKind::None: return "none";
        case ExpKind::Even: return "even";
        case ExpKind::Set: {
            std::string s = "set:[";
            for (size_t i = 0; i < values.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(values[i]);
            }
            s += "]";
            if (tail_min > 0) s += ",tail>=" + std::to_string(tail_min);
            return s;
        }
    }
    return "";
}

bool PrimeCond::matches(std::uint64_t p) const {
    switch (kind) {
        case Kind::Residue:
            return static_cast<std::int64_t>(p % static_cast<std::uint64_t>(mod)) == rem;
        case Kind::Kronecker:
            return kronecker_symbol(disc, static_cast<std::int64_t>(p)) == value;
        case Kind::ExplicitPrime:
            return p == prime;
        case Kind::Predicate:
            return true;
    }
    return false;
}

bool PrimeCond::matches_all_primes() const {
    return (kind == Kind::Residue && mod == 1) || kind == Kind::Predicate;
}

std::string PrimeCond::str() const {
    switch (kind) {
        case Kind::Residue: return "residue " + std::to_string(mod) + " " + std::to_string(rem);
        case Kind::Kronecker: return "kronecker " + std::to_string(disc) + " " + std::to_string(value);
        case Kind::ExplicitPrime: return "prime " + std::to_string(prime);
        case Kind::Predicate: return "predicate " + key;
    }
    return "";
}

namespace {

void validate(const std::string& name, const std::vector<SetRule>& rules, Rational delta) {
    if (rules.empty()) throw ValidationError(name + ": descriptor has no rules");
    if (!rules.back().cond.matches_all_primes())
        throw ValidationError(name + ": final rule must be a catch-all (residue 1 0 or predicate)");
    if (delta.num <= 0 || delta < Rational(0) || Rational(1) < delta)
        throw ValidationError(name + ": delta must lie in (0,1]");
    for (const SetRule& r : rules) {
        if (r.cond.kind == PrimeCond::Kind::Residue) {
            if (r.cond.mod < 1) throw ValidationError(name + ": residue modulus must be >= 1");
            if (r.cond.rem < 0 || r.cond.rem >= r.cond.mod)
                throw ValidationError(name + ": residue class out of range");
        }
        if (r.cond.kind == PrimeCond::Kind::Kronecker && !is_discriminant(r.cond.disc))
            throw ValidationError(name + ": kronecker condition needs a valid discriminant");
        if (r.exp.kind == ExpKind::Set && !std::is_sorted(r.exp.values.begin(), r.exp.values.end()))
            throw ValidationError(name + ": exponent list must be ascending");
    }
    std::optional<Rational> implied = implied_prime_density(rules);
    if (implied && *implied != delta)
        throw ValidationError(name + ": declared delta " + delta.str() +
                              " does not match rule-implied density " + implied->str());
}

} // namespace

std::optional<Rational> implied_prime_density(const std::vector<SetRule>& rules) {
    std::int64_t modulus = 1;
    for (const SetRule& r : rules) {
        switch (r.cond.kind) {
            case PrimeCond::Kind::Residue:
                modulus = std::lcm(modulus, r.cond.mod);
                break;
            case PrimeCond::Kind::Kronecker: {
                std::int64_t m = r.cond.disc < 0 ? -r.cond.disc : r.cond.disc;
                modulus = std::lcm(modulus, m);
                break;
            }
            case PrimeCond::Kind::ExplicitPrime:
                break; // density zero
            case PrimeCond::Kind::Predicate:
                return std::nullopt;
        }
        if (modulus > (1 << 20)) return std::nullopt;
    }
    std::int64_t coprime = 0, in_set = 0;
    for (std::int64_t a = 1; a <= modulus; ++a) {
        if (std::gcd(a, modulus) != 1) continue;
        ++coprime;
        for (const SetRule& r : rules) {
            bool match = false;
            switch (r.cond.kind) {
                case PrimeCond::Kind::Residue:
                    match = (a % r.cond.mod) == r.cond.rem;
                    break;
                case PrimeCond::Kind::Kronecker:
                    match = kronecker_symbol(r.cond.disc, a) == r.cond.value;
                    break;
                case PrimeCond::Kind::ExplicitPrime:
                    match = false; // measure zero
                    break;
                case PrimeCond::Kind::Predicate:
                    match = true;
                    break;
            }
            if (match) {
                if (r.exp.contains(1)) ++in_set;
                break;
            }
        }
    }
    return Rational(in_set, coprime);
}

SetDescriptor::SetDescriptor(std::string name, std::vector<SetRule> rules, Rational delta,
                             std::optional<double> rho_hint)
    : name_(std::move(name)), rules_(std::move(rules)), delta_(delta), rho_hint_(rho_hint) {
    validate(name_, rules_, delta_);
}

bool SetDescriptor::is_predicate_set() const {
    return !rules_.empty() && rules_.front().cond.kind == PrimeCond::Kind::Predicate;
}

const std::string& SetDescriptor::predicate_key() const {
    static const std::string empty;
    return is_predicate_set() ? rules_.front().cond.key : empty;
}

SetDescriptor SetDescriptor::with_predicate(std::shared_ptr<const ComputedPredicate> pred) const {
    SetDescriptor copy = *this;
    copy.predicate_ = std::move(pred);
    return copy;
}

const ExpRule& SetDescriptor::classify_prime(std::uint64_t p) const {
    for (const SetRule& r : rules_)
        if (r.cond.matches(p)) return r.exp;
    throw ValidationError(name_ + ": no rule matched prime " + std::to_string(p));
}

int SetDescriptor::chi_prime_power(std::uint64_t p, std::uint32_t e) const {
    if (e == 0) return 1;
    if (is_predicate_set()) {
        if (!predicate_)
            throw std::runtime_error(name_ + ": predicate set has no backing sieve attached");
        std::uint64_t pe = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            if (pe > predicate_->bound / p)
                throw std::out_of_range(name_ + ": prime power exceeds backing sieve bound");
            pe *= p;
        }
        return predicate_->chi(pe);
    }
    return classify_prime(p).contains(e) ? 1 : 0;
}

bool SetDescriptor::is_semigroup() const {
    if (is_predicate_set()) return false;
    for (const SetRule& r : rules_) {
        if (r.exp.kind == ExpKind::None) continue;
        if (!r.exp.generator_power()) return false;
    }
    return true;
}

std::string SetDescriptor::canonical() const {
    std::ostringstream os;
    os << "name=" << name_ << ";delta=" << delta_.str();
    for (const SetRule& r : rules_) os << ";rule=" << r.cond.str() << "|" << r.exp.str();
    return os.str();
}

std::uint64_t SetDescriptor::hash() const {
    // FNV-1a over the canonical form
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : canonical()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

int chi(const SetDescriptor& desc, std::uint64_t n, std::uint64_t factor_bound) {
    if (n == 0) throw std::domain_error("chi: n must be >= 1");
    if (n == 1) return 1;
    if (n > factor_bound) throw std::out_of_range("chi: n exceeds factorization bound");
    if (desc.is_predicate_set()) {
        const auto& pred = desc.predicate();
        if (!pred) throw std::runtime_error(desc.name() + ": predicate set has no backing sieve attached");
        if (n > pred->bound) throw std::out_of_range(desc.name() + ": n exceeds backing sieve bound");
        return pred->chi(n);
    }
    std::uint64_t m = n;
    auto take = [&](std::uint64_t p) -> bool {
        std::uint32_t e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        return e == 0 || desc.classify_prime(p).contains(e);
    };
    if (!take(2)) return 0;
    if (!take(3)) return 0;
    for (std::uint64_t p = 5; p * p <= m; p += 6) {
        if (!take(p)) return 0;
        if (!take(p + 2)) return 0;
    }
    if (m > 1 && !take(m)) return 0;
    return 1;
}

Rational delta_of(const SetDescriptor& desc) { return desc.delta(); }

// ---------------------------------------------------------------------------
// builtins
// ---------------------------------------------------------------------------

namespace {

SetRule rule_residue(std::int64_t d, std::int64_t a, ExpRule e) {
    SetRule r;
    r.cond.kind = PrimeCond::Kind::Residue;
    r.cond.mod = d;
    r.cond.rem = a;
    r.exp = std::move(e);
    return r;
}

SetRule rule_kronecker(std::int64_t D, int v, ExpRule e) {
    SetRule r;
    r.cond.kind = PrimeCond::Kind::Kronecker;
    r.cond.disc = D;
    r.cond.value = v;
    r.exp = std::move(e);
    return r;
}

SetRule rule_prime(std::uint64_t p, ExpRule e) {
    SetRule r;
    r.cond.kind = PrimeCond::Kind::ExplicitPrime;
    r.cond.prime = p;
    r.exp = std::move(e);
    return r;
}

SetRule rule_predicate(std::string key) {
    SetRule r;
    r.cond.kind = PrimeCond::Kind::Predicate;
    r.cond.key = std::move(key);
    r.exp.kind = ExpKind::All;
    return r;
}

ExpRule exp_all() { return {ExpKind::All, {}, 0}; }
ExpRule exp_none() { return {ExpKind::None, {}, 0}; }
ExpRule exp_even() { return {ExpKind::Even, {}, 0}; }
ExpRule exp_only(std::vector<std::uint32_t> v) { return {ExpKind::Set, std::move(v), 0}; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ValidationError("bad integer for " + what + ": '" + s + "'");
    return v;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// density of primes with q not dividing tau(p), for the moduli with known
// Ramanujan congruences
std::optional<Rational> tau_nondiv_delta(std::uint64_t q) {
    switch (q) {
        case 3: return Rational(1, 2);
        case 5: return Rational(3, 4);
        case 7: return Rational(1, 2);
        case 23: return Rational(1, 2);
        case 691: return Rational(689, 690);
        default: return std::nullopt;
    }
}

} // namespace

std::vector<std::string> builtin_names() {
    return {"sum2sq", "hex", "nonhyp", "naturals", "quadsem:D", "sprime:D",
            "progsem:d:a", "phi-nondiv:q", "tau-nondiv:q"};
}

SetDescriptor builtin_descriptor(const std::string& name_with_params) {
    std::vector<std::string> parts = split(name_with_params, ':');
    const std::string& base = parts[0];

    if (base == "sum2sq" && parts.size() == 1) {
        std::vector<SetRule> rules{rule_prime(2, exp_all()), rule_residue(4, 1, exp_all()),
                                   rule_residue(4, 3, exp_even()), rule_residue(1, 0, exp_all())};
        return SetDescriptor("sum2sq", std::move(rules), Rational(1, 2));
    }
    if (base == "hex" && parts.size() == 1) {
        std::vector<SetRule> rules{rule_prime(3, exp_all()), rule_residue(3, 1, exp_all()),
                                   rule_residue(3, 2, exp_even()), rule_residue(1, 0, exp_all())};
        return SetDescriptor("hex", std::move(rules), Rational(1, 2));
    }
    if (base == "nonhyp" && parts.size() == 1) {
        std::vector<SetRule> rules{rule_prime(2, exp_all()), rule_residue(4, 3, exp_all()),
                                   rule_residue(1, 0, exp_none())};
        return SetDescriptor("nonhyp", std::move(rules), Rational(1, 2));
    }
    if (base == "naturals" && parts.size() == 1) {
        std::vector<SetRule> rules{rule_residue(1, 0, exp_all())};
        return SetDescriptor("naturals", std::move(rules), Rational(1, 1));
    }
    if (base == "quadsem" && parts.size() == 2) {
        std::int64_t D = parse_int(parts[1], "quadsem discriminant");
        if (!is_fundamental_discriminant(D) || D >= 0)
            throw ValidationError("quadsem: needs a negative fundamental discriminant, got " + parts[1]);
        std::vector<SetRule> rules{rule_kronecker(D, 1, exp_all()), rule_kronecker(D, -1, exp_even()),
                                   rule_residue(1, 0, exp_none())};
        return SetDescriptor("quadsem:" + std::to_string(D), std::move(rules), Rational(1, 2));
    }
    if (base == "sprime" && parts.size() == 2) {
        std::int64_t D = parse_int(parts[1], "sprime discriminant");
        if (!is_fundamental_discriminant(D) || D >= 0)
            throw ValidationError("sprime: needs a negative fundamental discriminant, got " + parts[1]);
        std::vector<SetRule> rules{rule_kronecker(D, -1, exp_all()), rule_residue(1, 0, exp_none())};
        return SetDescriptor("sprime:" + std::to_string(D), std::move(rules), Rational(1, 2));
    }
    if (base == "progsem" && parts.size() == 3) {
        std::int64_t d = parse_int(parts[1], "progsem modulus");
        std::int64_t a = parse_int(parts[2], "progsem residue");
        if (d < 2 || a < 0 || a >= d || std::gcd(a, d) != 1)
            throw ValidationError("progsem: needs modulus d >= 2 and residue a coprime to d");
        std::int64_t phi = 0;
        for (std::int64_t r = 1; r <= d; ++r)
            if (std::gcd(r, d) == 1) ++phi;
        std::vector<SetRule> rules{rule_residue(d, a, exp_all()), rule_residue(1, 0, exp_none())};
        return SetDescriptor("progsem:" + std::to_string(d) + ":" + std::to_string(a), std::move(rules),
                             Rational(1, phi));
    }
    if (base == "phi-nondiv" && parts.size() == 2) {
        std::int64_t q = parse_int(parts[1], "phi-nondiv modulus");
        if (q < 3 || !is_prime_u64(static_cast<std::uint64_t>(q)))
            throw ValidationError("phi-nondiv: q must be an odd prime");
        // q | phi(p^e) iff p = 1 (mod q), or p = q with e >= 2
        std::vector<SetRule> rules{rule_prime(static_cast<std::uint64_t>(q), exp_only({1})),
                                   rule_residue(q, 1, exp_none()), rule_residue(1, 0, exp_all())};
        return SetDescriptor("phi-nondiv:" + std::to_string(q), std::move(rules), Rational(q - 2, q - 1));
    }
    if (base == "tau-nondiv" && (parts.size() == 2 || parts.size() == 3)) {
        std::int64_t q = parse_int(parts[1], "tau-nondiv modulus");
        if (q < 2 || !is_prime_u64(static_cast<std::uint64_t>(q)))
            throw ValidationError("tau-nondiv: q must be prime");
        std::optional<Rational> delta = tau_nondiv_delta(static_cast<std::uint64_t>(q));
        if (parts.size() == 3) {
            std::vector<std::string> frac = split(parts[2], '/');
            if (frac.size() == 2)
                delta = Rational(parse_int(frac[0], "delta"), parse_int(frac[1], "delta"));
            else
                throw ValidationError("tau-nondiv: explicit delta must be a fraction p/q");
        }
        if (!delta)
            throw ValidationError("tau-nondiv:" + std::to_string(q) +
                                  ": no built-in density for this modulus; supply delta explicitly");
        std::vector<SetRule> rules{rule_predicate("tau-nondiv:" + std::to_string(q))};
        SetDescriptor d("tau-nondiv:" + std::to_string(q), std::move(rules), *delta);
        d.ramanujan_exponent_ = Rational(1) - *delta;
        return d;
    }
    throw ValidationError("unknown builtin set '" + name_with_params + "'");
}

// ---------------------------------------------------------------------------
// descriptor documents
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

ExpRule parse_exp(const std::string& text, int line) {
    std::string t = trim(text);
    if (t == "all") return exp_all();
    if (t == "none") return exp_none();
    if (t == "even") return exp_even();
    if (t.rfind("set:[", 0) == 0) {
        size_t close = t.find(']');
        if (close == std::string::npos) throw ParseError("unterminated exponent list", line);
        ExpRule r;
        r.kind = ExpKind::Set;
        std::string body = t.substr(5, close - 5);
        if (!body.empty())
            for (const std::string& v : split(body, ','))
                r.values.push_back(static_cast<std::uint32_t>(parse_int(trim(v), "exponent")));
        std::string rest = trim(t.substr(close + 1));
        if (!rest.empty()) {
            if (rest.rfind(",tail>=", 0) != 0) throw ParseError("bad exponent tail '" + rest + "'", line);
            r.tail_min = static_cast<std::uint32_t>(parse_int(trim(rest.substr(7)), "tail"));
            if (r.tail_min == 0) throw ParseError("tail>= must be positive", line);
        }
        std::sort(r.values.begin(), r.values.end());
        return r;
    }
    throw ParseError("unknown exponent rule '" + t + "'", line);
}

PrimeCond parse_cond(const std::string& text, int line) {
    std::istringstream is(trim(text));
    std::string kind;
    is >> kind;
    PrimeCond c;
    if (kind == "residue") {
        std::int64_t d, a;
        if (!(is >> d >> a)) throw ParseError("residue condition needs 'residue d a'", line);
        c.kind = PrimeCond::Kind::Residue;
        c.mod = d;
        c.rem = a;
    } else if (kind == "kronecker") {
        std::int64_t D;
        int v;
        if (!(is >> D >> v)) throw ParseError("kronecker condition needs 'kronecker D v'", line);
        c.kind = PrimeCond::Kind::Kronecker;
        c.disc = D;
        c.value = v;
    } else if (kind == "prime") {
        std::uint64_t p;
        if (!(is >> p)) throw ParseError("prime condition needs 'prime p'", line);
        c.kind = PrimeCond::Kind::ExplicitPrime;
        c.prime = p;
    } else if (kind == "predicate") {
        std::string key;
        if (!(is >> key)) throw ParseError("predicate condition needs a key", line);
        c.kind = PrimeCond::Kind::Predicate;
        c.key = key;
    } else {
        throw ParseError("unknown prime condition '" + kind + "'", line);
    }
    std::string rest;
    if (is >> rest) throw ParseError("trailing tokens in condition", line);
    return c;
}

} // namespace

SetDescriptor parse_descriptor(const std::string& text) {
    if (text.find('\n') == std::string::npos && text.find('=') == std::string::npos)
        return builtin_descriptor(trim(text));

    std::string name;
    std::optional<Rational> delta;
    std::optional<double> rho;
    std::vector<SetRule> rules;

    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", line);
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key == "name") {
            name = value;
        } else if (key == "delta") {
            std::vector<std::string> frac = split(value, '/');
            if (frac.size() == 1)
                delta = Rational(parse_int(trim(frac[0]), "delta"));
            else if (frac.size() == 2)
                delta = Rational(parse_int(trim(frac[0]), "delta"), parse_int(trim(frac[1]), "delta"));
            else
                throw ParseError("delta must be an integer or fraction", line);
        } else if (key == "rho") {
            rho = std::strtod(value.c_str(), nullptr);
        } else if (key == "rule") {
            size_t semi = value.find(';');
            if (semi == std::string::npos) throw ParseError("rule needs 'cond=...; exp=...'", line);
            std::string cpart = trim(value.substr(0, semi));
            std::string epart = trim(value.substr(semi + 1));
            if (cpart.rfind("cond=", 0) != 0) throw ParseError("rule must start with cond=", line);
            if (epart.rfind("exp=", 0) != 0) throw ParseError("rule must contain exp=", line);
            SetRule r;
            r.cond = parse_cond(cpart.substr(5), line);
            r.exp = parse_exp(epart.substr(4), line);
            rules.push_back(std::move(r));
        } else {
            throw ParseError("unknown field '" + key + "'", line);
        }
    }
    if (name.empty()) throw ValidationError("descriptor document lacks a name");
    if (!delta) {
        std::optional<Rational> implied = implied_prime_density(rules);
        if (!implied) throw ValidationError(name + ": delta not given and not derivable from rules");
        delta = implied;
    }
    return SetDescriptor(name, std::move(rules), *delta, rho);
}

} // namespace msets
