#include "brocard/cli.hpp"

#include "brocard/errors.hpp"
#include "brocard/hunt.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace brocard {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
    std::size_t digit_bound = kDefaultDigitBound;
    std::uint64_t sieve_budget = kDefaultSieveBudget;
    unsigned workers = 1;
    unsigned window_multiplier = kDefaultWindowMultiplier;
    std::string output;
    bool no_meta = false;
    bool csv = false;
};

// Bad user input discovered after CLI11 has finished parsing.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::pair<std::uint64_t, std::uint64_t> parse_pair(const std::string& text, const std::string& what) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw usage_error(what + " must look like a:b, got '" + text + "'");
    try {
        std::size_t u1 = 0, u2 = 0;
        const auto a = std::stoull(text.substr(0, colon), &u1);
        const auto b = std::stoull(text.substr(colon + 1), &u2);
        if (u1 == colon && u2 == text.size() - colon - 1) return {a, b};
    } catch (const std::logic_error&) {
    }
    throw usage_error(what + " must look like a:b, got '" + text + "'");
}

BigInt parse_big(const std::string& text) {
    BigInt v;
    if (text.empty() || v.set_str(text, 10) != 0) throw usage_error("not an integer: '" + text + "'");
    return v;
}

json profile_json(const FactorizationVector& v) {
    json o = json::object();
    for (const auto& [p, e] : v.entries()) o[std::to_string(p)] = e;
    return o;
}

json big_array(const std::vector<BigInt>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(x.get_str());
    return a;
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args);

private:
    void build(CLI::App& app);
    void emit(const std::string& text);
    void emit(const json& j) { emit(j.dump(2) + "\n"); }
    int emit_report(const SearchReport& r) {
        emit(r.to_json(!cfg_.no_meta) + "\n");
        return r.unknown_dominated() ? 1 : 0;
    }

    std::ostream& out_;
    std::ostream& err_;
    RunConfig cfg_;
    std::function<int()> action_;

    // Option storage shared by the subcommands.
    std::string form_, text_, set_, rhs_, range_, residue_, table_, kind_ = "factorial", poly_;
    std::uint64_t l_ = 0, prime_ = 0, upto_ = 0, len_ = 0, primes_ = 50, lmax_ = 0;
    std::int64_t delta_ = 0;
    std::optional<std::int64_t> start_;
    double ratio_ = 2.0;
    bool no_sieve_ = false;
    std::size_t witness_digits_ = CertificateOptions{}.witness_digits;
};

void Runner::emit(const std::string& text) {
    if (cfg_.output.empty()) {
        out_ << text;
        return;
    }
    std::filesystem::path path(cfg_.output);
    if (const char* dir = std::getenv("BROCARD_OUTPUT_DIR"); dir && *dir) {
        path = std::filesystem::path(dir) / path.filename();
    }
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    file << text;
}

void Runner::build(CLI::App& app) {
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    app.set_config("--config", "", "key = value file; command-line flags win");
    app.allow_config_extras(false);
    app.add_option("--digit-bound", cfg_.digit_bound, "largest integer (in digits) any command materializes")
        ->check(CLI::PositiveNumber);
    app.add_option("--sieve-budget", cfg_.sieve_budget, "widest prime sieve range")->check(CLI::PositiveNumber);
    app.add_option("--workers", cfg_.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--window-multiplier", cfg_.window_multiplier, "p-ordering window factor m")
        ->check(CLI::PositiveNumber);
    app.add_option("--output,-o", cfg_.output, "write to this file (directory overridable by BROCARD_OUTPUT_DIR)");
    app.add_flag("--no-meta", cfg_.no_meta, "omit timing and other run metadata");
    app.add_flag("--csv", cfg_.csv, "CSV instead of JSON for density, gap and growth tables");

    // ---- form
    auto* form = app.add_subcommand("form", "binary forms")->require_subcommand(1);
    auto* info = form->add_subcommand("info", "discriminants, irreducibility, factorization over Z");
    info->add_option("form", form_, "\"a_n,...,a_0\" or a polynomial in x, y")->required();
    info->callback([this] {
        action_ = [this] {
            const auto f = parse_form(form_);
            json j;
            j["form"] = f.to_string();
            j["coefficients"] = f.to_coefficient_string();
            j["degree"] = f.degree();
            j["content"] = f.content();
            j["discriminant"] = f.discriminant().get_str();
            j["modified_discriminant"] = f.modified_discriminant().get_str();
            j["squarefree"] = f.is_squarefree();
            try {
                const auto fac = factor_over_Z(f);
                j["irreducible"] = fac.factors.size() == 1 && fac.factors[0].second == 1 && std::abs(fac.content) == 1;
                json parts = json::array();
                for (const auto& [g, m] : fac.factors) parts.push_back({{"factor", g.to_string()}, {"multiplicity", m}});
                j["factorization"] = {{"content", fac.content}, {"factors", parts}};
            } catch (const unsupported_error& e) {
                j["irreducible"] = nullptr;
                j["factorization"] = e.what();
            }
            emit(j);
            return 0;
        };
    });

    auto* ct = form->add_subcommand("cycletype", "cycle type of F mod p");
    ct->add_option("form", form_)->required();
    auto* ct_prime = ct->add_option("--prime", prime_, "a single prime");
    auto* ct_upto = ct->add_option("--upto", upto_, "every prime up to N");
    ct_prime->excludes(ct_upto);
    ct->callback([this, ct_prime, ct_upto] {
        if (ct_prime->count() + ct_upto->count() != 1) throw CLI::ValidationError("give exactly one of --prime, --upto");
        action_ = [this, single = ct_prime->count() == 1] {
            const auto f = parse_form(form_);
            std::vector<std::uint64_t> primes;
            if (single) {
                if (!is_prime(prime_)) throw usage_error(std::to_string(prime_) + " is not prime");
                primes.push_back(prime_);
            } else {
                primes = primes_in(2, upto_, std::nullopt, cfg_.sieve_budget);
            }
            json rows = json::array();
            for (auto p : primes) {
                const auto st = prime_status(f, p);
                json row{{"p", p}, {"good", st.good}};
                if (st.cycle) {
                    row["cycle"] = st.cycle->parts;
                } else {
                    row["reason"] = st.reason();
                }
                rows.push_back(row);
            }
            emit(json{{"form", f.to_string()}, {"primes", rows}});
            return 0;
        };
    });

    auto* pset = form->add_subcommand("pset", "primes where F has no root mod p");
    pset->add_option("form", form_)->required();
    pset->add_option("--upto", upto_)->required();
    pset->callback([this] {
        action_ = [this] {
            const auto f = parse_form(form_);
            json primes = json::array();
            for (auto p : primes_in(2, upto_, std::nullopt, cfg_.sieve_budget)) {
                if (in_pset(f, p) == PSetMembership::InPSet) primes.push_back(p);
            }
            emit(json{{"form", f.to_string()}, {"upto", upto_}, {"primes", primes}});
            return 0;
        };
    });

    auto* density = form->add_subcommand("density", "share of good primes where F has a root");
    density->add_option("form", form_)->required();
    density->add_option("--upto", upto_)->required();
    density->callback([this] {
        action_ = [this] {
            const auto f = parse_form(form_);
            const auto d = root_density(f, upto_, cfg_.workers);
            if (cfg_.csv) {
                std::ostringstream s;
                s << "prime_bound,with_root,sample,density\n" << upto_ << ',' << d.with_root << ',' << d.sample << ','
                  << d.value() << '\n';
                emit(s.str());
            } else {
                emit(json{{"form", f.to_string()}, {"prime_bound", upto_}, {"with_root", d.with_root},
                          {"sample", d.sample}, {"density", d.value()}});
            }
            return 0;
        };
    });

    // ---- rep
    auto* rep = app.add_subcommand("rep", "representation by quadratic forms")->require_subcommand(1);
    auto* test = rep->add_subcommand("test", "is N = F(x, y)? criterion and exhaustive search, cross-checked");
    test->add_option("form", form_)->required();
    test->add_option("n", text_)->required();
    test->callback([this] {
        action_ = [this] {
            const auto q = parse_quadform(form_);
            const auto n = parse_big(text_);
            if (n < 1) throw usage_error("N must be positive");
            check_digit_bound(n, cfg_.digit_bound, "rep test: N");
            const auto fac = factorize(n);
            json j{{"form", q.to_string()}, {"n", n.get_str()}};
            std::optional<bool> decided;
            std::optional<std::pair<BigInt, BigInt>> witness;

            if (fac.complete()) {
                const auto ex = exponent_criterion(q.to_binary(), fac);
                j["exponent_check"] = {{"blocked", ex.blocked}, {"rule", ex.rule}};
                if (ex.blocked) {
                    j["exponent_check"]["prime"] = ex.prime.get_str();
                    j["exponent_check"]["exponent"] = ex.exponent;
                    decided = false;
                }
            }
            std::optional<bool> by_criterion;
            if (fac.complete() && q.positive_definite()) {
                try {
                    const auto c = representable_criterion(q, fac);
                    by_criterion = c.representable;
                    j["criterion"] = {{"applicable", true}, {"representable", c.representable}, {"reason", c.reason}};
                } catch (const unsupported_error& e) {
                    j["criterion"] = {{"applicable", false}, {"reason", e.what()}};
                }
            }
            if (q.positive_definite()) {
                witness = representable_bruteforce(q, n);
                j["exhaustive"] = {{"representable", witness.has_value()}};
                if (witness) j["exhaustive"]["witness"] = big_array({witness->first, witness->second});
                if ((by_criterion && *by_criterion != witness.has_value()) || (decided && witness)) {
                    throw std::logic_error("criterion and exhaustive search disagree");
                }
                decided = witness.has_value();
            }
            j["verdict"] = !decided ? "Unknown" : (*decided ? "Representable" : "NotRepresentable");
            if (witness) j["witness"] = big_array({witness->first, witness->second});
            emit(j);
            return decided ? 0 : 1;
        };
    });

    auto* three = rep->add_subcommand("three-squares", "is N a sum of three squares?");
    three->add_option("n", text_)->required();
    three->callback([this] {
        action_ = [this] {
            const auto n = parse_big(text_);
            if (n < 0) throw usage_error("N must be non-negative");
            emit(json{{"n", n.get_str()}, {"sum_of_three_squares", is_sum_three_squares(n)}});
            return 0;
        };
    });

    // ---- fact
    auto* fact = app.add_subcommand("fact", "factorial-like sequences")->require_subcommand(1);
    auto* fprof = fact->add_subcommand("profile", "prime exponents of H_l");
    fprof->add_option("--kind", kind_, "factorial, lcm, primorial or multinomial:a");
    fprof->add_option("--l", l_)->required();
    fprof->callback([this] {
        action_ = [this] {
            const auto kind = parse_hseq_kind(kind_);
            const auto v = hseq_profile(kind, l_);
            emit(json{{"kind", to_string(kind)}, {"l", l_}, {"log10", v.log_value() / std::log(10.0)},
                      {"profile", profile_json(v)}});
            return 0;
        };
    });

    // ---- pik
    auto* pik = app.add_subcommand("pik", "products of ideal norms")->require_subcommand(1);
    auto* pprof = pik->add_subcommand("profile", "prime exponents of Pi_K(l)");
    auto* pdelta = pprof->add_option("--delta", delta_, "fundamental discriminant of a quadratic field");
    auto* ptable = pprof->add_option("--table", table_, "splitting table file instead of --delta");
    pdelta->excludes(ptable);
    pprof->add_option("--l", l_)->required();
    pprof->callback([this, pdelta, ptable] {
        if (pdelta->count() + ptable->count() != 1) throw CLI::ValidationError("give exactly one of --delta, --table");
        action_ = [this, use_table = ptable->count() == 1] {
            const auto field = use_table ? SplittingProfile::from_table_file(table_) : SplittingProfile::quadratic(delta_);
            const auto v = pi_K_profile(field, l_, kDefaultPiKBound, cfg_.workers);
            emit(json{{"field", field.description()}, {"l", l_}, {"profile", profile_json(v)}});
            return 0;
        };
    });
    auto* pcount = pik->add_subcommand("count", "number of ideals of norm n");
    pcount->add_option("--delta", delta_)->required();
    pcount->add_option("--n", text_)->required();
    pcount->callback([this] {
        action_ = [this] {
            const auto n = parse_big(text_);
            if (n < 1) throw usage_error("n must be positive");
            emit(json{{"delta", delta_}, {"n", n.get_str()}, {"count", ideal_count(delta_, n)}});
            return 0;
        };
    });

    // ---- bharg
    auto* bharg = app.add_subcommand("bharg", "generalized factorials l!_S")->require_subcommand(1);
    auto* bprof = bharg->add_subcommand("profile", "prime exponents of l!_S for primes <= B");
    bprof->add_option("--set", set_, "Z, \"AP a b\", \"POLY c_d ... c_0\" or \"WINDOW file\"")->required();
    bprof->add_option("--l", l_)->required();
    bprof->add_option("--primes", primes_, "prime bound B");
    bprof->callback([this] {
        action_ = [this] {
            const auto s = parse_bhargava_set(set_);
            const auto p = bhargava_profile(s, l_, primes_, cfg_.window_multiplier, cfg_.workers);
            emit(json{{"set", s.description()}, {"l", l_}, {"prime_bound", primes_}, {"closed_form", p.closed_form},
                      {"truncated", p.truncated}, {"unstable", p.unstable}, {"profile", profile_json(p.exponents)}});
            return 0;
        };
    });
    auto* border = bharg->add_subcommand("order", "greedy p-ordering and p-sequence");
    border->add_option("--set", set_)->required();
    border->add_option("--p", prime_)->required();
    border->add_option("--len", len_)->required();
    border->add_option("--start", start_, "first element a_0");
    border->callback([this] {
        action_ = [this] {
            const auto s = parse_bhargava_set(set_);
            const auto seq = p_ordering(s, prime_, len_, start_, cfg_.window_multiplier);
            emit(json{{"set", s.description()}, {"p", prime_}, {"values", seq.values}, {"ordering", seq.ordering},
                      {"stable", seq.stable}});
            return 0;
        };
    });
    auto* growth = bharg->add_subcommand("growth", "log rad(l!_S) against log l!_S");
    growth->add_option("--set", set_)->required();
    growth->add_option("--range", range_, "lo:hi")->required();
    growth->add_option("--primes", primes_);
    growth->callback([this] {
        action_ = [this] {
            const auto s = parse_bhargava_set(set_);
            const auto [lo, hi] = parse_pair(range_, "--range");
            const auto rows = radical_growth_report(s, lo, hi, primes_, cfg_.window_multiplier);
            if (cfg_.csv) {
                std::ostringstream o;
                o << "l,log_radical,log_value,ratio,truncated\n";
                for (const auto& r : rows) {
                    o << r.l << ',' << r.log_radical << ',' << r.log_value << ',' << r.ratio() << ','
                      << (r.truncated ? 1 : 0) << '\n';
                }
                emit(o.str());
            } else {
                json a = json::array();
                for (const auto& r : rows) {
                    a.push_back({{"l", r.l}, {"log_radical", r.log_radical}, {"log_value", r.log_value},
                                 {"ratio", r.ratio()}, {"truncated", r.truncated}});
                }
                emit(json{{"set", s.description()}, {"prime_bound", primes_}, {"rows", a}});
            }
            return 0;
        };
    });

    // ---- hunt
    auto* hunt = app.add_subcommand("hunt", "searches and certificates")->require_subcommand(1);
    auto* broc = hunt->add_subcommand("brocard", "all (x, l) with P(x) = l!");
    broc->add_option("--poly", poly_, "integer polynomial in x")->required();
    broc->add_option("--lmax", lmax_)->required()->check(CLI::Range(std::uint64_t{1}, kMaxBrocardL));
    broc->add_flag("--no-sieve", no_sieve_, "skip the residue pre-test");
    broc->callback([this] {
        action_ = [this] {
            BrocardOptions o;
            o.modular_exclusion = !no_sieve_;
            o.digit_bound = cfg_.digit_bound;
            o.workers = cfg_.workers;
            return emit_report(brocard_search(parse_int_poly(poly_), lmax_, o));
        };
    });

    auto* cert = hunt->add_subcommand("certify", "per-l certificates for N_l = F(x, y)");
    cert->add_option("--form", form_)->required();
    cert->add_option("--rhs", rhs_, "factorial, lcm, primorial, multinomial:a, pik:D, pik-table:file, bharg:<set>[@B]")
        ->required();
    cert->add_option("--range", range_, "lo:hi")->required();
    cert->add_option("--witness-digits", witness_digits_, "largest N handed to the exhaustive search");
    cert->callback([this] {
        action_ = [this] {
            const auto f = parse_form(form_);
            auto rhs = parse_rhs(rhs_);
            if (auto* b = std::get_if<BhargavaSource>(&rhs)) b->window_multiplier = cfg_.window_multiplier;
            const auto [lo, hi] = parse_pair(range_, "--range");
            CertificateOptions o;
            o.witness_digits = std::min(witness_digits_, cfg_.digit_bound);
            o.workers = cfg_.workers;
            auto report = certificate_search(f, rhs, lo, hi, o);
            for (const auto& c : report.entries) {
                if (!verify_certificate(f, rhs, c)) {
                    throw std::logic_error("certificate at l = " + std::to_string(c.l) + " failed re-verification");
                }
            }
            report.notes.push_back("every certificate re-verified from raw inputs");
            return emit_report(report);
        };
    });

    auto* fam = hunt->add_subcommand("family", "(a!/4 + 1)^2 - (a!/4 - 1)^2 = a!");
    fam->add_option("--arange", range_, "lo:hi")->required();
    fam->callback([this] {
        action_ = [this] {
            const auto [lo, hi] = parse_pair(range_, "--arange");
            const auto rows = family_check(lo, hi, cfg_.digit_bound);
            json a = json::array();
            bool all = true;
            for (const auto& r : rows) {
                a.push_back({{"a", r.a}, {"x", r.x.get_str()}, {"y", r.y.get_str()}, {"holds", r.holds}});
                all = all && r.holds;
            }
            emit(json{{"equation", "x^2 - y^2 = a!"}, {"rows", a}, {"all_hold", all}});
            return all ? 0 : 1;
        };
    });

    auto* gaps = hunt->add_subcommand("gaps", "eligible primes with no eligible successor in (p, A p)");
    auto* gres = gaps->add_option("--residue", residue_, "a:b for primes p = a mod b");
    auto* gform = gaps->add_option("--form", form_, "primes where the form has no root");
    gres->excludes(gform);
    gaps->add_option("--range", range_, "lo:hi")->required();
    gaps->add_option("--ratio", ratio_, "A > 1");
    gaps->callback([this, gres, gform] {
        if (gres->count() + gform->count() != 1) throw CLI::ValidationError("give exactly one of --residue, --form");
        action_ = [this, by_residue = gres->count() == 1] {
            PrimeSource src = Residue{};
            std::string label;
            if (by_residue) {
                const auto [a, b] = parse_pair(residue_, "--residue");
                src = Residue{a, b};
                label = "p = " + std::to_string(a) + " mod " + std::to_string(b);
            } else {
                const auto f = parse_form(form_);
                label = "no root of " + f.to_string() + " mod p";
                src = f;
            }
            const auto [lo, hi] = parse_pair(range_, "--range");
            const auto v = bertrand_gap_check(src, lo, hi, ratio_, cfg_.sieve_budget);
            if (cfg_.csv) {
                std::ostringstream o;
                o << "p,next\n";
                for (const auto& g : v) {
                    o << g.p << ',';
                    if (g.next) o << *g.next;
                    o << '\n';
                }
                emit(o.str());
            } else {
                json a = json::array();
                for (const auto& g : v) a.push_back({{"p", g.p}, {"next", g.next ? json(*g.next) : json(nullptr)}});
                emit(json{{"primes", label}, {"range", {{"lo", lo}, {"hi", hi}}}, {"ratio", ratio_}, {"violations", a}});
            }
            return 0;
        };
    });

    auto* parity = hunt->add_subcommand("parity", "inert-prime parity conditions per l");
    parity->add_option("--delta", delta_)->required();
    parity->add_option("--rhs", rhs_)->required();
    parity->add_option("--range", range_, "lo:hi")->required();
    parity->callback([this] {
        action_ = [this] {
            const auto [lo, hi] = parse_pair(range_, "--range");
            const auto rows = parity_blocker(delta_, parse_rhs(rhs_), lo, hi);
            json a = json::array();
            for (const auto& r : rows) {
                json row{{"l", r.l}, {"pass", r.pass}};
                if (r.prime) {
                    row["prime"] = *r.prime;
                    row["exponent"] = r.exponent;
                }
                row["condition"] = r.condition;
                a.push_back(row);
            }
            emit(json{{"delta", delta_}, {"rhs", rhs_}, {"rows", a}});
            return 0;
        };
    });
}

int Runner::run(const std::vector<std::string>& args) {
    CLI::App app("Factorial Diophantine equations and binary forms", "brocard");
    build(app);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out_ << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out_ << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err_ << "usage error: " << e.what() << "\n";
        return 2;
    }
    try {
        return action_ ? action_() : 2;
    } catch (const std::invalid_argument& e) {
        err_ << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err_ << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return Runner(out, err).run(args);
}

} // namespace brocard
