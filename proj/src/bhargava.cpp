#include "brocard/bhargava.hpp"

#include "brocard/errors.hpp"
#include "brocard/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace brocard {

namespace {

std::int64_t checked_eval(const std::vector<std::int64_t>& low_to_high, std::int64_t x) {
    __int128 acc = 0;
    for (auto it = low_to_high.rbegin(); it != low_to_high.rend(); ++it) {
        acc = acc * x + *it;
        if (acc > std::numeric_limits<std::int64_t>::max() / 4 || acc < std::numeric_limits<std::int64_t>::min() / 4) {
            throw bound_exceeded("set element overflows 64 bits; shrink the window");
        }
    }
    return static_cast<std::int64_t>(acc);
}

bool abs_order(std::int64_t u, std::int64_t v) {
    const auto au = u < 0 ? -static_cast<__int128>(u) : u;
    const auto av = v < 0 ? -static_cast<__int128>(v) : v;
    if (au != av) return au < av;
    return u > v;
}

unsigned vp(std::int64_t d, std::uint64_t p) {
    // d != 0
    unsigned e = 0;
    auto m = static_cast<unsigned __int128>(d < 0 ? -static_cast<__int128>(d) : d);
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return e;
}

struct GreedyRun {
    std::vector<std::uint64_t> values;
    std::vector<std::int64_t> ordering;
};

GreedyRun greedy(const std::vector<std::int64_t>& window, std::uint64_t p, std::size_t length,
                 std::optional<std::int64_t> start) {
    if (window.size() < length + 1) throw std::invalid_argument("p_ordering: set has fewer than L + 1 elements");
    const auto w = window.size();
    std::vector<std::uint64_t> score(w, 0);
    std::vector<bool> used(w, false);
    GreedyRun run;
    std::size_t pick = 0;
    if (start) {
        const auto it = std::find(window.begin(), window.end(), *start);
        if (it == window.end()) throw std::invalid_argument("p_ordering: start element is not in the window");
        pick = static_cast<std::size_t>(it - window.begin());
    }
    for (std::size_t n = 0; n <= length; ++n) {
        if (n > 0) {
            pick = w;
            for (std::size_t i = 0; i < w; ++i) {
                if (!used[i] && (pick == w || score[i] < score[pick])) pick = i;
            }
        }
        used[pick] = true;
        run.values.push_back(n == 0 ? 0 : score[pick]);
        run.ordering.push_back(window[pick]);
        const auto chosen = window[pick];
        for (std::size_t i = 0; i < w; ++i) {
            if (!used[i]) score[i] += vp(window[i] - chosen, p);
        }
    }
    return run;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw std::invalid_argument("bad " + what + " '" + text + "'");
    return v;
}

} // namespace

BhargavaSet BhargavaSet::integers() { return BhargavaSet{}; }

BhargavaSet BhargavaSet::progression(std::int64_t a, std::int64_t b) {
    if (a == 0) throw std::invalid_argument("progression needs a nonzero step");
    BhargavaSet s;
    s.kind_ = Kind::Progression;
    s.a_ = a < 0 ? -a : a; // a Z + b == (-a) Z + b
    s.b_ = b;
    return s;
}

BhargavaSet BhargavaSet::poly_image(std::vector<std::int64_t> high_to_low) {
    while (!high_to_low.empty() && high_to_low.front() == 0) high_to_low.erase(high_to_low.begin());
    if (high_to_low.size() < 2) throw std::invalid_argument("polynomial image needs a non-constant polynomial");
    if (high_to_low.size() > 4) throw std::invalid_argument("polynomial image supports degree <= 3");
    if (high_to_low.size() == 2) return progression(high_to_low[0], high_to_low[1]);
    BhargavaSet s;
    s.kind_ = Kind::PolyImage;
    s.poly_.assign(high_to_low.rbegin(), high_to_low.rend());
    return s;
}

BhargavaSet BhargavaSet::window(std::vector<std::int64_t> elements) {
    std::set<std::int64_t> distinct(elements.begin(), elements.end());
    if (distinct.size() != elements.size()) throw std::invalid_argument("window elements must be distinct");
    if (elements.empty()) throw std::invalid_argument("window is empty");
    BhargavaSet s;
    s.kind_ = Kind::Window;
    s.window_ = std::move(elements);
    std::sort(s.window_.begin(), s.window_.end(), abs_order);
    return s;
}

std::string BhargavaSet::description() const {
    std::ostringstream out;
    switch (kind_) {
    case Kind::Integers:
        return "Z";
    case Kind::Progression:
        out << "AP " << a_ << ' ' << b_;
        break;
    case Kind::PolyImage:
        out << "POLY";
        for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) out << ' ' << *it;
        break;
    case Kind::Window:
        out << "WINDOW of " << window_.size() << " elements";
        break;
    }
    return out.str();
}

std::vector<std::int64_t> BhargavaSet::elements(std::size_t count) const {
    if (kind_ == Kind::Window) return window_;
    std::set<std::int64_t> seen;
    std::vector<std::int64_t> out;
    out.reserve(count);
    for (std::int64_t k = 0; out.size() < count; ++k) {
        for (const std::int64_t n : {k, -k}) {
            if (k == 0 && n < 0) continue;
            std::int64_t x = 0;
            switch (kind_) {
            case Kind::Integers:
                x = n;
                break;
            case Kind::Progression:
                x = checked_eval({b_, a_}, n);
                break;
            default:
                x = checked_eval(poly_, n);
                break;
            }
            if (seen.insert(x).second) out.push_back(x);
        }
    }
    // The window is the first `count` distinct values along n = 0, 1, -1, ...;
    // sorting only fixes the tie-break order.
    out.resize(count);
    std::sort(out.begin(), out.end(), abs_order);
    return out;
}

BhargavaSet parse_bhargava_set(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string head;
    in >> head;
    std::vector<std::string> args;
    for (std::string t; in >> t;) args.push_back(t);
    if (head == "Z" && args.empty()) return BhargavaSet::integers();
    if (head == "AP" && args.size() == 2) {
        return BhargavaSet::progression(parse_int(args[0], "step"), parse_int(args[1], "offset"));
    }
    if (head == "POLY" && args.size() >= 2 && args.size() <= 4) {
        std::vector<std::int64_t> c;
        for (const auto& a : args) c.push_back(parse_int(a, "coefficient"));
        return BhargavaSet::poly_image(c);
    }
    if (head == "WINDOW" && args.size() == 1) {
        std::ifstream file(args[0]);
        if (!file) throw std::invalid_argument("cannot open window file " + args[0]);
        std::vector<std::int64_t> values;
        for (std::string t; file >> t;) values.push_back(parse_int(t, "window element"));
        return BhargavaSet::window(std::move(values));
    }
    throw std::invalid_argument("bad set descriptor '" + std::string(text) + "' (expected Z, AP a b, POLY c.., WINDOW file)");
}

bool PSequence::all_stable() const {
    return std::all_of(stable.begin(), stable.end(), [](bool b) { return b; });
}

PSequence p_ordering(const BhargavaSet& s, std::uint64_t p, std::size_t length, std::optional<std::int64_t> start,
                     unsigned window_multiplier) {
    if (!is_prime(p)) throw std::invalid_argument("p_ordering: " + std::to_string(p) + " is not prime");
    if (window_multiplier == 0) throw std::invalid_argument("p_ordering: window multiplier must be positive");
    PSequence out;
    out.p = p;
    if (s.kind() == BhargavaSet::Kind::Window) {
        const auto run = greedy(s.elements(0), p, length, start);
        out.values = run.values;
        out.ordering = run.ordering;
        out.stable.assign(run.values.size(), true);
        return out;
    }
    const auto w = std::max<std::uint64_t>(64, static_cast<std::uint64_t>(window_multiplier) * (length + 1) * p);
    const auto small = greedy(s.elements(w), p, length, start);
    const auto large = greedy(s.elements(2 * w), p, length, start);
    out.values = small.values;
    out.ordering = small.ordering;
    for (std::size_t n = 0; n <= length; ++n) out.stable.push_back(small.values[n] == large.values[n]);
    return out;
}

BhargavaProfile bhargava_profile(const BhargavaSet& s, std::uint64_t l, std::uint64_t prime_bound,
                                 unsigned window_multiplier, unsigned workers) {
    BhargavaProfile out;
    out.prime_bound = prime_bound;
    if (s.kind() == BhargavaSet::Kind::Integers || s.kind() == BhargavaSet::Kind::Progression) {
        out.closed_form = true;
        if (l == 0) return out;
        auto v = hseq_profile(HSeqKind::factorial(), l, std::numeric_limits<std::uint64_t>::max());
        if (s.kind() == BhargavaSet::Kind::Progression) {
            const auto step = factorize(to_big(s.step()));
            for (const auto& [p, e] : step.factors()) v.add(to_uint64(p), e * l);
        }
        for (const auto& [p, e] : v.entries()) {
            if (p <= prime_bound) {
                out.exponents.add(p, e);
            } else {
                out.truncated = true;
            }
        }
        return out;
    }
    out.truncated = true;
    const auto primes = primes_in(2, prime_bound);
    auto parts = parallel_blocks(primes.size(), workers, [&](std::size_t lo, std::size_t hi) {
        std::vector<PSequence> seqs;
        for (auto i = lo; i < hi; ++i) seqs.push_back(p_ordering(s, primes[i], l, std::nullopt, window_multiplier));
        return seqs;
    });
    for (const auto& part : parts) {
        for (const auto& seq : part) {
            out.exponents.add(seq.p, seq.values[l]);
            if (!seq.stable[l]) out.unstable.push_back(seq.p);
        }
    }
    return out;
}

unsigned quad_image_valuation(std::uint64_t p, std::uint64_t l, std::int64_t a, std::int64_t /*b*/,
                              std::int64_t /*c*/) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("quad_image_valuation: p must be an odd prime");
    if (a % static_cast<std::int64_t>(p) == 0) throw std::invalid_argument("quad_image_valuation: p divides a");
    if (l > p) throw unsupported_error("quad_image_valuation: the table stops at l = p");
    if (l <= (p - 1) / 2) return 0;
    if (l <= p - 1) return 1;
    return 2;
}

std::uint64_t cube_image_count(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("cube_image_count: " + std::to_string(p) + " is not prime");
    return p % 3 == 1 ? (p + 2) / 3 : p;
}

std::vector<RadicalGrowthRow> radical_growth_report(const BhargavaSet& s, std::uint64_t lo, std::uint64_t hi,
                                                    std::uint64_t prime_bound, unsigned window_multiplier) {
    if (lo > hi) throw std::invalid_argument("radical_growth_report: empty range");
    std::vector<RadicalGrowthRow> rows;
    for (auto l = lo; l <= hi; ++l) {
        const auto profile = bhargava_profile(s, l, prime_bound, window_multiplier);
        RadicalGrowthRow row;
        row.l = l;
        row.truncated = profile.truncated;
        for (const auto& [p, e] : profile.exponents.entries()) row.log_radical += std::log(static_cast<double>(p));
        row.log_value = profile.exponents.log_value();
        rows.push_back(row);
    }
    return rows;
}

} // namespace brocard
