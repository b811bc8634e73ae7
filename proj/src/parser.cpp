#include <cstdlib>
#include <map>

#include "freepot/demilinear.hpp"
#include "freepot/ncpoly.hpp"

namespace freepot {

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}

namespace {

// Raw polynomial over 2g letters: 1..g are x variables, g+1..2g are h variables.
using Raw = std::map<Word, cplx, WordOrder>;

void raw_add(Raw& into, const Word& w, cplx c) {
    auto it = into.find(w);
    if (it == into.end()) {
        if (c != cplx{}) into.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second == cplx{}) into.erase(it);
}

struct Parser {
    const std::string& text;
    std::size_t g;
    bool allow_h;
    std::size_t degree_cap;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, at);
    }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool at_end() const { return pos >= text.size(); }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    unsigned parse_uint() {
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected integer", pos);
        unsigned v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<unsigned>(peek() - '0');
            if (v > 1000000) fail("integer too large", pos);
            ++pos;
        }
        return v;
    }

    // number starting with a digit or '.'; signs belong to the grammar above
    bool try_float(double& out) {
        skip_ws();
        if (at_end()) return false;
        const char c = peek();
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') return false;
        const char* start = text.c_str() + pos;
        char* end = nullptr;
        out = std::strtod(start, &end);
        if (end == start) return false;
        pos += static_cast<std::size_t>(end - start);
        return true;
    }

    Raw constant(cplx c) const {
        Raw r;
        if (c != cplx{}) r.emplace(Word{}, c);
        return r;
    }

    Raw multiply(const Raw& a, const Raw& b) {
        Raw r;
        for (const auto& [wa, ca] : a)
            for (const auto& [wb, cb] : b) {
                Word w = word_concat(wa, wb);
                if (w.size() > degree_cap)
                    fail("monomial degree exceeds cap " + std::to_string(degree_cap), pos);
                raw_add(r, w, ca * cb);
            }
        return r;
    }

    Raw parse_base() {
        skip_ws();
        if (at_end()) fail("unexpected end of input", pos);
        const char c = peek();
        if (c == 'x' || c == 'h') {
            const std::size_t at = pos;
            ++pos;
            unsigned idx = parse_uint();
            if (idx < 1 || idx > g)
                fail(std::string(1, c) + std::to_string(idx) + " out of range 1.." +
                         std::to_string(g),
                     at);
            if (c == 'h' && !allow_h)
                fail("h variables are only legal in demilinear expressions", at);
            const unsigned letter = c == 'x' ? idx : static_cast<unsigned>(g) + idx;
            Raw r;
            r.emplace(Word{letter}, cplx{1.0});
            return r;
        }
        if (c == '(') {
            // try a complex literal "(re +/- im i)" first, else a parenthesized expr
            const std::size_t save = pos;
            ++pos;
            double re = 0.0, im = 0.0;
            if (try_float(re)) {
                skip_ws();
                const char sign = peek();
                if (sign == '+' || sign == '-') {
                    ++pos;
                    if (try_float(im)) {
                        skip_ws();
                        if (consume('i')) {
                            skip_ws();
                            if (consume(')'))
                                return constant({re, sign == '-' ? -im : im});
                        }
                    }
                }
            }
            pos = save;
            ++pos;  // '('
            Raw inner = parse_expr();
            skip_ws();
            if (!consume(')')) fail("expected ')'", pos);
            return inner;
        }
        double v = 0.0;
        if (try_float(v)) {
            skip_ws();
            if (consume('i')) return constant({0.0, v});
            return constant(v);
        }
        fail("expected variable, number or '('", pos);
    }

    Raw parse_factor() {
        Raw base = parse_base();
        skip_ws();
        if (consume('^')) {
            unsigned e = parse_uint();
            Raw r = constant(1.0);
            for (unsigned k = 0; k < e; ++k) r = multiply(r, base);
            return r;
        }
        return base;
    }

    Raw parse_term() {
        Raw r = parse_factor();
        for (;;) {
            skip_ws();
            if (!consume('*')) return r;
            r = multiply(r, parse_factor());
        }
    }

    Raw parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = text[pos++] == '-';
        Raw r = parse_term();
        if (neg)
            for (auto& [w, c] : r) c = -c;
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') return r;
            ++pos;
            Raw t = parse_term();
            for (const auto& [w, cc] : t) raw_add(r, w, c == '-' ? -cc : cc);
        }
    }

    // h slots separated by ';'
    std::vector<Raw> parse_slots(std::size_t h) {
        std::vector<Raw> slots;
        slots.push_back(parse_expr());
        for (;;) {
            skip_ws();
            if (!consume(';')) break;
            slots.push_back(parse_expr());
        }
        skip_ws();
        if (!at_end()) fail("unexpected trailing input", pos);
        if (slots.size() != h)
            fail("expected " + std::to_string(h) + " expression(s) separated by ';', got " +
                     std::to_string(slots.size()),
                 pos);
        return slots;
    }
};

}  // namespace

NcPoly parse_poly(const std::string& text, std::size_t g, std::size_t h,
                  const ParseOptions& opts) {
    Parser p{text, g, /*allow_h=*/false, opts.degree_cap};
    auto slots = p.parse_slots(h);
    NcPoly out(g, h);
    for (std::size_t s = 0; s < h; ++s)
        for (const auto& [w, c] : slots[s]) out.set_coeff(s, w, c);
    return out;
}

DemiPoly parse_demi(const std::string& text, std::size_t g, std::size_t h,
                    const ParseOptions& opts) {
    Parser p{text, g, /*allow_h=*/true, opts.degree_cap};
    auto slots = p.parse_slots(h);
    DemiPoly out(g, h);
    for (std::size_t s = 0; s < h; ++s)
        for (const auto& [w, c] : slots[s]) {
            std::size_t h_count = 0, h_pos = 0;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (w[i] > g) {
                    ++h_count;
                    h_pos = i;
                }
            if (h_count != 1)
                throw ParseError("demilinear monomial '" + word_str(w) +
                                     "' must contain exactly one h factor",
                                 0);
            DemiKey key{Word(w.begin(), w.begin() + h_pos),
                        static_cast<unsigned>(w[h_pos] - g),
                        Word(w.begin() + h_pos + 1, w.end())};
            out.add_term(s, key, c);
        }
    return out;
}

}  // namespace freepot
