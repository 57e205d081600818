// Acceptance suite: one check per release criterion, one PASS/FAIL line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "msets/asymptotics.hpp"
#include "msets/ek.hpp"
#include "msets/mangoldt.hpp"
#include "msets/races.hpp"
#include "msets/sieve.hpp"
#include "msets/tau.hpp"

using namespace msets;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

int threads() { return 2; }

Outcome criterion1_gamma_sb() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    PrecisionContext ctx;
    EKEstimate sb = ek_sum_two_squares(ctx);
    double err = std::abs((sb.value - dd_from_string("-0.1638973186345")).to_double());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[160];
    std::snprintf(buf, sizeof buf, "gamma_SB=%s |err vs published|=%.2e (tol 1e-12), %.2fs",
                  to_string(sb.value, 15).c_str(), err, secs);
    o.note(buf);
    o.require(err <= 1e-12, "gamma_SB outside 1e-12 of -0.1638973186345");
    o.require(secs < 60.0, "runtime over 1 minute");
    return o;
}

Outcome criterion2_table_rows() {
    Outcome o;
    PrecisionContext ctx;
    EKEstimate nh = ek_nonhypotenuse(ctx);
    double err = std::abs(nh.value.to_double() - (-0.4095));
    char buf[160];
    std::snprintf(buf, sizeof buf, "gamma_NH=%.8f |err vs -0.4095|=%.2e (tol 1.5e-4)",
                  nh.value.to_double(), err);
    o.note(buf);
    o.require(err <= 1.5e-4, "gamma_NH outside 1.5e-4 of the table value");
    o.require(winner(ek_sum_two_squares(ctx)) == Winner::Ramanujan, "sum2sq winner not Ramanujan");
    o.require(winner(nh) == Winner::Ramanujan, "nonhyp winner not Ramanujan");
    return o;
}

Outcome criterion3_cilleruelo() {
    Outcome o;
    PrecisionContext ctx;
    ddouble j1 = cilleruelo_j(ctx);
    ddouble j2 = cilleruelo_j_direct(ctx);
    ddouble published = dd_from_string("-0.0662756342");
    double e1 = std::abs((j1 - published).to_double());
    double e2 = std::abs((j2 - published).to_double());
    char buf[200];
    std::snprintf(buf, sizeof buf, "J(relation)=%s, J(direct)=%s, errs %.2e / %.2e (tol 1e-9)",
                  to_string(j1, 12).c_str(), to_string(j2, 12).c_str(), e1, e2);
    o.note(buf);
    o.require(e1 <= 1e-9, "relation path off the published value");
    o.require(e2 <= 1e-9, "direct path off the published value");
    return o;
}

Outcome criterion4_wirsing() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    PrecisionContext ctx;
    SetDescriptor sb = builtin_descriptor("sum2sq");
    SetDescriptor sh = builtin_descriptor("hex");
    C0Result ab = wirsing_c0_accelerated(sb, ctx);
    C0Result ah = wirsing_c0_accelerated(sh, ctx);
    C0Result db = wirsing_c0_direct(sb, 100000000ULL);
    C0Result dh = wirsing_c0_direct(sh, 100000000ULL);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "C0(SB)=%.7f C0(SH)=%.7f, |direct-accel|=%.2e / %.2e (tol 1e-3), %.1fs",
                  ab.value.to_double(), ah.value.to_double(),
                  std::abs((ab.value - db.value).to_double()),
                  std::abs((ah.value - dh.value).to_double()), secs);
    o.note(buf);
    o.require(std::abs(ab.value.to_double() - 0.764) <= 5e-4, "C0(S_B) outside 5e-4 of 0.764");
    o.require(std::abs(ah.value.to_double() - 0.639) <= 5e-4, "C0(S_H) outside 5e-4 of 0.639");
    o.require(std::abs((ab.value - db.value).to_double()) <= 1e-3, "sum2sq paths disagree");
    o.require(std::abs((ah.value - dh.value).to_double()) <= 1e-3, "hex paths disagree");
    o.require(secs < 300.0, "runtime over 5 minutes");
    return o;
}

Outcome criterion5_races() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t X = 10000000;
    RaceReport main = race(builtin_descriptor("sum2sq"), builtin_descriptor("hex"), X, threads());
    o.require(!main.violation, "S_B vs S_H violated");
    std::vector<RaceReport> suite = race_suite_thm9(X, threads());
    for (const RaceReport& r : suite)
        o.require(!r.violation, r.a + " vs " + r.b + " violated");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "S_B vs S_H min margin %lld at x=%llu; 4 progression races clean; X=1e7, %.1fs",
                  static_cast<long long>(main.min_margin),
                  static_cast<unsigned long long>(main.min_margin_x), secs);
    o.note(buf);
    o.require(secs < 600.0, "runtime over 10 minutes");
    return o;
}

Outcome criterion6_tau() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t N = 1000000;

    TauTable t691 = tau_mod_sieve(691, std::max<std::uint64_t>(N, 100000), threads());
    std::vector<std::uint32_t> sig = sigma11_mod(691, 100000);
    bool cong = true;
    for (std::uint64_t n = 1; n <= 100000 && cong; ++n) cong = t691.tau_mod(n) == sig[n];
    o.require(cong, "sigma_11 congruence failed below 1e5");

    // Ramanujan's delta_q is the density of q | tau(p): 1/2 for q=3,7,23 and
    // 1/4 for q=5 (so the non-divisibility ratios are 1/2 and 3/4), 1/690 at 691
    double d3 = delta_empirical(tau_mod_sieve(3, N, threads()), N);
    double d5 = delta_empirical(tau_mod_sieve(5, N, threads()), N);
    double d7 = delta_empirical(tau_mod_sieve(7, N, threads()), N);
    double d23 = delta_empirical(tau_mod_sieve(23, N, threads()), N);
    double d691 = delta_empirical(t691, N);
    o.require(std::abs(d3 - 0.5) <= 0.02, "q=3 density off 1/2");
    o.require(std::abs((1.0 - d5) - 0.25) <= 0.02, "q=5 divisibility density off 1/4");
    o.require(std::abs(d7 - 0.5) <= 0.02, "q=7 density off 1/2");
    o.require(std::abs(d23 - 0.5) <= 0.02, "q=23 density off 1/2");
    o.require(std::abs(d691 - 689.0 / 690.0) <= 0.01, "q=691 density off 689/690");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "sigma11 ok to 1e5; nondiv ratios at 1e6: %.4f %.4f %.4f %.4f %.6f, %.1fs", d3,
                  d5, d7, d23, d691, secs);
    o.note(buf);
    o.require(secs < 300.0, "runtime over 5 minutes");
    return o;
}

Outcome criterion7_identities() {
    Outcome o;
    PrecisionContext ctx;
    // closed form == recursion, 500 pseudo-random draws, exact integers
    std::vector<SetDescriptor> descs;
    for (const char* n : {"sum2sq", "hex", "nonhyp", "naturals", "quadsem:-7", "sprime:-8",
                          "progsem:4:1", "phi-nondiv:3"})
        descs.push_back(builtin_descriptor(n));
    PrimeTable primes = primes_up_to(200);
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    bool closed_ok = true;
    for (int i = 0; i < 500 && closed_ok; ++i) {
        const SetDescriptor& d = descs[next() % descs.size()];
        std::uint64_t p = primes.primes[next() % primes.primes.size()];
        std::uint32_t e = 1 + static_cast<std::uint32_t>(next() % 8);
        closed_ok = lambda_closed_coeff(d, p, e) == Rational(lambda_recursive(d, p, e).coeff);
    }
    o.require(closed_ok, "closed form != recursion");

    // convolution identity on every builtin for n <= 2000, exact log-p coefficients
    auto tau5 = std::make_shared<TauTable>(tau_mod_sieve(5, 2100));
    std::vector<SetDescriptor> all = descs;
    all.push_back(builtin_descriptor("tau-nondiv:5").with_predicate(tau_predicate(tau5)));
    auto factor = [](std::uint64_t n) {
        std::vector<std::pair<std::uint64_t, std::uint32_t>> f;
        for (std::uint64_t p = 2; p * p <= n; ++p) {
            std::uint32_t e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (e) f.emplace_back(p, e);
        }
        if (n > 1) f.emplace_back(n, 1);
        return f;
    };
    bool conv_ok = true;
    for (const SetDescriptor& d : all) {
        for (std::uint64_t n = 2; n <= 2000 && conv_ok; ++n) {
            int chin = chi(d, n);
            for (const auto& [p, emax] : factor(n)) {
                std::int64_t lhs = static_cast<std::int64_t>(emax) * chin;
                std::int64_t rhs = 0;
                std::uint64_t pj = 1;
                for (std::uint32_t j = 1; j <= emax; ++j) {
                    pj *= p;
                    rhs += lambda_recursive(d, p, j).coeff * chi(d, n / pj);
                }
                if (lhs != rhs) conv_ok = false;
            }
        }
        if (!conv_ok) break;
    }
    o.require(conv_ok, "convolution identity failed");

    // Cilleruelo-lemma route vs inert-square-sum route
    bool props_ok = true;
    for (std::int64_t D : {-3LL, -4LL, -7LL, -8LL, -23LL}) {
        ddouble f53 = char_log_prime_sum(D, ctx);
        ddouble f54 = -l_log_deriv_at_1(D, ctx) - prime_square_sum(D, ctx);
        if (std::abs((f53 - f54).to_double()) > 1e-10) props_ok = false;
    }
    o.require(props_ok, "prime-sum identities disagree beyond 1e-10");

    ddouble ll = l_log_deriv_at_1(-4, ctx);
    ddouble m = agm(ddouble(1.0), sqrt(ddouble(2.0)), ctx);
    ddouble closed = 2.0 * log(m) + euler_gamma() - dd_ln2();
    double agm_err = std::abs((ll - closed).to_double());
    o.require(agm_err <= 1e-12, "AGM closed form off beyond 1e-12");
    char buf[120];
    std::snprintf(buf, sizeof buf, "500 exact coeffs, idi1 to n=2000 on 9 sets, |AGM-L'/L|=%.1e",
                  agm_err);
    o.note(buf);
    return o;
}

Outcome criterion8_cross_method() {
    Outcome o;
    PrecisionContext ctx;
    char buf[200];
    std::string detail;
    for (std::int64_t D : {-3LL, -4LL}) {
        SetDescriptor d = builtin_descriptor("quadsem:" + std::to_string(D));
        double ps = ek_partial_sum(d, 10000000).value.to_double();
        double lf = ek_quadratic(D, ctx).value.to_double();
        std::snprintf(buf, sizeof buf, "D=%lld: partial=%.5f lfun=%.5f diff=%.4f",
                      static_cast<long long>(D), ps, lf, ps - lf);
        detail += (detail.empty() ? "" : "; ") + std::string(buf);
        o.require(std::abs(ps - lf) <= 0.05, "cross-method gap beyond 0.05");
    }
    o.note(detail);
    return o;
}

Outcome criterion9_report_only_rows() {
    Outcome o;
    const std::uint64_t x = 1000000;
    // rows pinned in the literature with machinery beyond desk scale: report them next to
    // partial-sum estimates, assert nothing but the bloep trend below
    const struct {
        std::uint64_t q;
        double published;
    } tau_rows[] = {{3, 0.5349}, {5, 0.3995}, {7, 0.2316}, {23, 0.2166}, {691, 0.5717}};
    std::string report = "published-value rows (printed, not asserted):\n";
    char buf[200];
    for (const auto& row : tau_rows) {
        auto table = std::make_shared<TauTable>(tau_mod_sieve(row.q, x, threads()));
        SetDescriptor d = builtin_descriptor("tau-nondiv:" + std::to_string(row.q))
                              .with_predicate(tau_predicate(table));
        EKEstimate e = ek_partial_sum(d, x);
        std::snprintf(buf, sizeof buf, "    %llu-nondiv-tau: published %+0.4f, estimate %+0.4f (%s)\n",
                      static_cast<unsigned long long>(row.q), row.published, e.value.to_double(),
                      e.truncation.c_str());
        report += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "    phi thresholds: q<=67 Ramanujan (<0.4977), q>=71 Landau (>0.5023); "
                  "prog thresholds: q<=7 >0.5247, q>7 <0.2862\n");
    report += buf;
    BloepReport b3 = consistency_bloep(3, 10000000);
    BloepReport b5 = consistency_bloep(5, 10000000);
    std::snprintf(buf, sizeof buf,
                  "    S'_{3;1} est %.4f vs S'_{5;1} est %.4f at x=1e7; bloep residuals %.4f / %.4f\n",
                  b3.gamma_prog, b5.gamma_prog, b3.residual, b5.residual);
    report += buf;
    std::fputs(report.c_str(), stdout);
    o.require(b3.gamma_prog > b5.gamma_prog, "Theorem-7 trend gamma'_3 > gamma'_5 failed");
    o.require(std::abs(b3.residual) <= 0.1, "bloep residual at q=3 beyond 0.1");
    std::snprintf(buf, sizeof buf, "trend S'3(%.4f) > S'5(%.4f), residual(q=3)=%.4f", b3.gamma_prog,
                  b5.gamma_prog, b3.residual);
    o.note(buf);
    return o;
}

} // namespace

int main() {
    struct Named {
        const char* name;
        std::function<Outcome()> run;
    };
    const Named criteria[] = {
        {"gamma_SB to 1e-12 via L-functions", criterion1_gamma_sb},
        {"table rows at full precision (nonhyp, winners)", criterion2_table_rows},
        {"Cilleruelo J by two routes to 1e-9", criterion3_cilleruelo},
        {"Wirsing constants, two routes", criterion4_wirsing},
        {"set races to 1e7", criterion5_races},
        {"tau engine: congruence and densities", criterion6_tau},
        {"identity suite", criterion7_identities},
        {"cross-method gamma at 1e7", criterion8_cross_method},
        {"report-only rows + trend property", criterion9_report_only_rows},
    };
    int failures = 0;
    int id = 1;
    for (const Named& c : criteria) {
        Outcome o = c.run();
        std::printf("criterion %d: %s — %s (%s)\n", id, o.pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
        ++id;
    }
    std::printf("%d/9 acceptance criteria passed\n", 9 - failures);
    return failures;
}
