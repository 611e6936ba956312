#include "poly_parse.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>
#include <string>

namespace brocard::detail {

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool done() {
        skip_space();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    char take() {
        skip_space();
        return text_[pos_++];
    }
    std::uint64_t number() {
        skip_space();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a number");
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail("number too large");
            v = v * 10 + digit;
            ++pos_;
        }
        return v;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial syntax: " + what + " at position " + std::to_string(pos_) +
                                    " in \"" + std::string(text_) + "\"");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Monomials parse_monomials(std::string_view text) {
    Reader in(text);
    Monomials out;
    if (in.done()) in.fail("empty polynomial");
    bool first = true;
    while (!in.done()) {
        int sign = 1;
        const char c = in.peek();
        if (c == '+' || c == '-') {
            in.take();
            sign = c == '-' ? -1 : 1;
        } else if (!first) {
            in.fail("expected '+' or '-'");
        }
        first = false;

        std::uint64_t coefficient = 1;
        bool saw_factor = false;
        unsigned dx = 0, dy = 0;
        while (true) {
            const char t = in.peek();
            if (std::isdigit(static_cast<unsigned char>(t))) {
                const auto v = in.number();
                if (v != 0 && coefficient > std::numeric_limits<std::uint64_t>::max() / v) in.fail("coefficient too large");
                coefficient *= v;
            } else if (t == 'x' || t == 'y') {
                in.take();
                unsigned e = 1;
                if (in.peek() == '^') {
                    in.take();
                    const auto v = in.number();
                    if (v > 4096) in.fail("exponent too large");
                    e = static_cast<unsigned>(v);
                }
                (t == 'x' ? dx : dy) += e;
            } else {
                break;
            }
            saw_factor = true;
            if (in.peek() == '*') {
                in.take();
                const char n = in.peek();
                if (!(std::isdigit(static_cast<unsigned char>(n)) || n == 'x' || n == 'y')) in.fail("dangling '*'");
            }
        }
        if (!saw_factor) in.fail("expected a term");
        if (coefficient > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
            in.fail("coefficient too large");
        }
        auto& slot = out[{dx, dy}];
        slot += sign * static_cast<std::int64_t>(coefficient);
        if (slot == 0) out.erase({dx, dy});
    }
    return out;
}

} // namespace brocard::detail
