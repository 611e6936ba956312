// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Each check compares library output with an independent
// computation (brute force or direct arithmetic) and enforces its time limit.

#include "brocard/cli.hpp"
#include "brocard/hunt.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace brocard;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0 && secs >= limit_s) {
        o.pass = false;
        o.detail += " [over the " + std::to_string(static_cast<int>(limit_s)) + " s limit]";
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d  %s  (%.2f s)  %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
}

// Positive solutions (x, l) from the CLI report of P(x) = l!.
std::set<std::pair<std::string, std::uint64_t>> brocard_positive(const std::string& poly, int& code) {
    std::ostringstream out, err;
    code = run_cli({"--no-meta", "hunt", "brocard", "--poly", poly, "--lmax", "200"}, out, err);
    const auto j = nlohmann::json::parse(out.str());
    std::set<std::pair<std::string, std::uint64_t>> sols;
    for (const auto& e : j["entries"]) {
        if (e["verdict"] != "Representable") continue;
        for (const auto& x : e["witness"]) {
            const auto s = x.get<std::string>();
            if (s[0] != '-') sols.insert({s, e["l"].get<std::uint64_t>()});
        }
    }
    return sols;
}

std::uint64_t ideals_by_elements(std::int64_t delta, std::int64_t n) {
    // Principal norm form and unit count of the class-number-one field.
    switch (delta) {
    case -4:
        return oracle::count_representations(1, 0, 1, n) / 4;
    case -3:
        return oracle::count_representations(1, 1, 1, n) / 6;
    case -8:
        return oracle::count_representations(1, 0, 2, n) / 2;
    default:
        throw std::logic_error("no element oracle for this discriminant");
    }
}

} // namespace

int main() {
    criterion(1, "x^2-1 = l!, l <= 200: positive x exactly {5, 11, 71} at l {4, 5, 7}", 10, [] {
        int code = 0;
        const auto sols = brocard_positive("x^2-1", code);
        const std::set<std::pair<std::string, std::uint64_t>> want{{"5", 4}, {"11", 5}, {"71", 7}};
        return Outcome{code == 0 && sols == want, std::to_string(sols.size()) + " positive solutions"};
    });

    criterion(2, "x^4-1 = l!, l <= 200: no solutions", 10, [] {
        int code = 0;
        const auto sols = brocard_positive("x^4-1", code);
        return Outcome{code == 0 && sols.empty(), std::to_string(sols.size()) + " solutions"};
    });

    criterion(3, "(a!/4+1)^2 - (a!/4-1)^2 = a! for 4 <= a <= 30, exact", 1, [] {
        const auto rows = family_check(4, 30);
        bool ok = rows.size() == 27;
        BigInt fact = 6;
        for (const auto& r : rows) {
            fact *= static_cast<unsigned long>(r.a);
            // Independent: x - y = 2 and x + y = a!/2.
            ok = ok && r.holds && r.x - r.y == 2 && 2 * (r.x + r.y) == fact;
        }
        return Outcome{ok, std::to_string(rows.size()) + " values of a"};
    });

    criterion(4, "quadratic criterion vs exhaustive search, principal forms, 1 <= N <= 5000", 60, [] {
        std::uint64_t mismatches = 0, cases = 0;
        for (std::int64_t delta : {-3, -4, -7, -8, -11}) {
            const auto q = norm_form_restriction(delta);
            for (std::int64_t n = 1; n <= 5000; ++n) {
                const bool crit = representable_criterion(q, factorize(to_big(n))).representable;
                const bool brute = oracle::represent_bruteforce(q.a, q.b, q.c, n).has_value();
                mismatches += crit != brute ? 1 : 0;
                ++cases;
            }
        }
        return Outcome{mismatches == 0, std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches"};
    });

    criterion(5, "a(p^m) vs ideal enumeration (p <= 50, m <= 6) and divisor sums (n <= 10^4)", 0, [] {
        std::uint64_t mismatches = 0, cases = 0;
        for (std::int64_t delta : {-4, -3, -8}) {
            const auto field = SplittingProfile::quadratic(delta);
            for (std::uint64_t p = 2; p <= 50; ++p) {
                if (!oracle::slow_is_prime(p)) continue;
                std::int64_t pm = 1;
                for (unsigned m = 0; m <= 6; ++m, pm *= static_cast<std::int64_t>(p)) {
                    mismatches += field.ideal_count_prime_power(p, m) != ideals_by_elements(delta, pm) ? 1 : 0;
                    ++cases;
                }
            }
            for (std::uint64_t n = 1; n <= 10'000; ++n) {
                std::uint64_t product = 1;
                for (const auto& [p, e] : oracle::trial_factor(n)) {
                    product *= field.ideal_count_prime_power(p, static_cast<unsigned>(e));
                }
                mismatches += product != ideal_count(delta, to_big(n)) ? 1 : 0;
                ++cases;
            }
        }
        return Outcome{mismatches == 0, std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches"};
    });

    criterion(6, "Pi_Q(i)(5) = 2^3 * 5^2 = 200 via ideal enumeration", 0, [] {
        const auto v = pi_K_profile(-4, 5);
        std::map<std::uint64_t, std::uint64_t> expected;
        BigInt product = 1;
        for (std::int64_t n = 1; n <= 5; ++n) {
            const auto a = ideals_by_elements(-4, n);
            for (std::uint64_t k = 0; k < a; ++k) product *= static_cast<unsigned long>(n);
            if (a == 0) continue;
            for (const auto& [p, e] : oracle::trial_factor(static_cast<std::uint64_t>(n))) expected[p] += a * e;
        }
        const bool ok = v.entries() == expected && v.value() == product && product == 200;
        return Outcome{ok, "profile " + to_string(v) + ", value " + v.value().get_str()};
    });

    criterion(7, "greedy p-orderings reproduce v_p(a^l l!) and the quadratic-image table", 0, [] {
        std::uint64_t mismatches = 0, unstable = 0, cases = 0;
        for (const auto& [a, b] : {std::pair<std::int64_t, std::int64_t>{2, 1}, {3, 0}}) {
            const auto s = BhargavaSet::progression(a, b);
            for (std::uint64_t p : {2, 3, 5, 7, 11}) {
                const auto seq = p_ordering(s, p, 10);
                for (std::uint64_t l = 0; l <= 10; ++l) {
                    const auto want = oracle::legendre(l, p) + l * valuation(static_cast<std::uint64_t>(a), p);
                    mismatches += seq.values[l] != want ? 1 : 0;
                    unstable += seq.stable[l] ? 0 : 1;
                    ++cases;
                }
            }
        }
        const auto squares = BhargavaSet::poly_image({1, 0, 0});
        for (std::uint64_t p = 3; p <= 31; ++p) {
            if (!oracle::slow_is_prime(p)) continue;
            const auto seq = p_ordering(squares, p, p);
            for (std::uint64_t l = 0; l <= p; ++l) {
                // Table: 0 up to (p-1)/2, then 1 up to p-1, then 2 at l = p.
                const std::uint64_t want = l <= (p - 1) / 2 ? 0 : (l <= p - 1 ? 1 : 2);
                mismatches += seq.values[l] != want ? 1 : 0;
                unstable += seq.stable[l] ? 0 : 1;
                ++cases;
            }
        }
        return Outcome{mismatches == 0 && unstable == 0, std::to_string(cases) + " values, " +
                                                             std::to_string(mismatches) + " mismatches, " +
                                                             std::to_string(unstable) + " unstable"};
    });

    criterion(8, "certificates for x^2+y^2 = l!, 7 <= l <= 2000: no Unknown, all re-verified", 300, [] {
        const auto f = parse_form("x^2+y^2");
        const RhsSource rhs = HSeqKind::factorial();
        const auto report = certificate_search(f, rhs, 7, 2000);
        std::uint64_t failed = 0;
        std::string representable;
        for (const auto& c : report.entries) {
            if (!verify_certificate(f, rhs, c)) ++failed;
            if (c.verdict == Verdict::Representable) representable += (representable.empty() ? "" : ",") + std::to_string(c.l);
        }
        const auto unknown = report.count(Verdict::Unknown);
        const bool ok = report.entries.size() == 1994 && unknown == 0 && failed == 0;
        return Outcome{ok, std::to_string(report.count(Verdict::Blocked)) + " blocked, " + std::to_string(unknown) +
                               " unknown, " + std::to_string(failed) + " failed re-verification, representable l = {" +
                               representable + "}"};
    });

    criterion(9, "prime gaps: p = 3, 1 mod 4 in [11, 10^6] all have a successor in (p, 2p)", 30, [] {
        const auto a = bertrand_gap_check(Residue{3, 4}, 11, 1'000'000, 2.0);
        const auto b = bertrand_gap_check(Residue{1, 4}, 11, 1'000'000, 2.0);
        return Outcome{a.empty() && b.empty(),
                       std::to_string(a.size()) + " + " + std::to_string(b.size()) + " violations"};
    });

    criterion(10, "root densities at 10^6: x^2+y^2 in [0.49, 0.51], x^3-2y^3 in [0.65, 0.68]", 0, [] {
        const auto d2 = root_density(parse_form("x^2+y^2"), 1'000'000).value();
        const auto d3 = root_density(parse_form("x^3-2y^3"), 1'000'000).value();
        const bool ok = d2 >= 0.49 && d2 <= 0.51 && d3 >= 0.65 && d3 <= 0.68;
        return Outcome{ok, "x^2+y^2: " + std::to_string(d2) + ", x^3-2y^3: " + std::to_string(d3)};
    });

    std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
