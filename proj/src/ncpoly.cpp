#include "freepot/ncpoly.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "freepot/demilinear.hpp"

namespace freepot {

std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t run = 1;
        while (i + run < w.size() && w[i + run] == w[i]) ++run;
        if (i > 0) os << '*';
        os << 'x' << w[i];
        if (run > 1) os << '^' << run;
        i += run;
    }
    return os.str();
}

Word word_concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

NcPoly::NcPoly(std::size_t g, std::size_t h) : g_(g), h_(h), slots_(h) {
    if (g == 0 || h == 0) throw std::invalid_argument("NcPoly: arities must be positive");
}

cplx NcPoly::coeff(std::size_t s, const Word& w) const {
    auto it = slots_[s].find(w);
    return it == slots_[s].end() ? cplx{} : it->second;
}

void NcPoly::set_coeff(std::size_t s, const Word& w, cplx c) {
    for (unsigned letter : w)
        if (letter < 1 || letter > g_)
            throw std::invalid_argument("NcPoly: letter out of range");
    if (c == cplx{})
        slots_[s].erase(w);
    else
        slots_[s][w] = c;
}

void NcPoly::add_coeff(std::size_t s, const Word& w, cplx c) {
    set_coeff(s, w, coeff(s, w) + c);
}

bool NcPoly::is_zero() const {
    for (const auto& m : slots_)
        if (!m.empty()) return false;
    return true;
}

std::size_t NcPoly::degree() const {
    std::size_t d = 0;
    for (const auto& m : slots_)
        for (const auto& [w, c] : m) d = std::max(d, w.size());
    return d;
}

NcPoly NcPoly::drop_constant() const {
    NcPoly r = *this;
    for (std::size_t s = 0; s < h_; ++s) r.set_coeff(s, {}, 0.0);
    return r;
}

NcPoly operator+(const NcPoly& a, const NcPoly& b) {
    if (a.arity() != b.arity() || a.out_arity() != b.out_arity())
        throw std::invalid_argument("NcPoly: arity mismatch in +");
    NcPoly r = a;
    for (std::size_t s = 0; s < b.out_arity(); ++s)
        for (const auto& [w, c] : b.slot(s)) r.add_coeff(s, w, c);
    return r;
}

NcPoly operator-(const NcPoly& a, const NcPoly& b) { return a + (-1.0 * b); }

NcPoly operator*(cplx sc, const NcPoly& a) {
    NcPoly r(a.arity(), a.out_arity());
    for (std::size_t s = 0; s < a.out_arity(); ++s)
        for (const auto& [w, c] : a.slot(s)) r.set_coeff(s, w, sc * c);
    return r;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
    if (a.arity() != b.arity())
        throw std::invalid_argument("NcPoly: arity mismatch in *");
    if (a.out_arity() != 1 || b.out_arity() != 1)
        throw std::invalid_argument("NcPoly: product is defined for single-output polynomials");
    NcPoly r(a.arity(), 1);
    for (const auto& [wa, ca] : a.slot(0))
        for (const auto& [wb, cb] : b.slot(0)) r.add_coeff(0, word_concat(wa, wb), ca * cb);
    return r;
}

CMatrix eval_word(const Word& w, const MatrixTuple& x) {
    CMatrix acc = CMatrix::identity(x.level());
    for (unsigned letter : w) acc = acc * x[letter - 1];
    return acc;
}

MatrixTuple eval_poly(const NcPoly& p, const MatrixTuple& x) {
    if (p.arity() != x.arity())
        throw std::invalid_argument("eval_poly: arity mismatch");
    const std::size_t n = x.level();
    MatrixTuple out(p.out_arity(), n);
    for (std::size_t s = 0; s < p.out_arity(); ++s) {
        CMatrix acc(n);
        for (const auto& [w, c] : p.slot(s)) {
            if (w.empty()) {
                acc += c * CMatrix::identity(n);
            } else {
                acc += c * eval_word(w, x);
            }
        }
        out[s] = std::move(acc);
    }
    return out;
}

DemiPoly formal_derivative(const NcPoly& p) {
    DemiPoly d(p.arity(), p.out_arity());
    for (std::size_t s = 0; s < p.out_arity(); ++s)
        for (const auto& [w, c] : p.slot(s))
            for (std::size_t j = 0; j < w.size(); ++j) {
                DemiKey key{Word(w.begin(), w.begin() + j), w[j],
                            Word(w.begin() + j + 1, w.end())};
                d.add_term(s, key, c);
            }
    return d;
}

std::string format_double(double v) {
    char buf[40];
    // shortest representation that parses back exactly
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string format_complex(cplx v) {
    if (v.imag() == 0.0) return format_double(v.real());
    if (v.real() == 0.0) return format_double(v.imag()) + "i";
    std::string s = "(" + format_double(v.real());
    if (v.imag() >= 0.0 || std::isnan(v.imag())) s += "+";
    s += format_double(v.imag()) + "i)";
    return s;
}

namespace {

// shared by NcPoly and DemiPoly printing; `body` is the monomial without sign
void append_term(std::ostringstream& os, bool first, cplx c, const std::string& body) {
    const bool empty_body = body.empty();
    std::string coeff_str;
    bool negate = false;
    if (!empty_body && c == cplx{1.0}) {
        coeff_str.clear();
    } else if (!empty_body && c == cplx{-1.0}) {
        negate = true;
    } else {
        cplx cc = c;
        // pull a plain negative real sign out in front
        if (cc.imag() == 0.0 && cc.real() < 0.0) {
            negate = true;
            cc = -cc;
        }
        coeff_str = format_complex(cc);
    }
    if (first) {
        if (negate) os << '-';
    } else {
        os << (negate ? " - " : " + ");
    }
    if (coeff_str.empty()) {
        os << (empty_body ? "1" : body);
    } else {
        os << coeff_str;
        if (!empty_body) os << '*' << body;
    }
}

}  // namespace

std::string to_string(const NcPoly& p) {
    std::ostringstream os;
    for (std::size_t s = 0; s < p.out_arity(); ++s) {
        if (s > 0) os << "; ";
        if (p.slot(s).empty()) {
            os << '0';
            continue;
        }
        bool first = true;
        for (const auto& [w, c] : p.slot(s)) {
            append_term(os, first, c, w.empty() ? std::string{} : word_str(w));
            first = false;
        }
    }
    return os.str();
}

std::string to_string(const DemiPoly& t) {
    std::ostringstream os;
    for (std::size_t s = 0; s < t.out_arity(); ++s) {
        if (s > 0) os << "; ";
        if (t.slot(s).empty()) {
            os << '0';
            continue;
        }
        bool first = true;
        for (const auto& [key, c] : t.slot(s)) {
            std::string body;
            if (!key.left.empty()) body += word_str(key.left) + "*";
            body += "h" + std::to_string(key.var);
            if (!key.right.empty()) body += "*" + word_str(key.right);
            append_term(os, first, c, body);
            first = false;
        }
    }
    return os.str();
}

}  // namespace freepot
