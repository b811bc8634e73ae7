#pragma once

#include <map>
#include <string>
#include <vector>

#include "freepot/tuple.hpp"

namespace freepot {

/// Monomial in the free variables: an ordered sequence of letters from 1..g.
/// The empty word is the constant 1.
using Word = std::vector<unsigned>;

/// Canonical word order: by length, then lexicographic on letters.
struct WordOrder {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

std::string word_str(const Word& w);
Word word_concat(const Word& a, const Word& b);

class DemiPoly;

/// Free noncommutative polynomial with h output slots: per slot a finite map
/// from words over {1..g} to complex coefficients. Zero coefficients are never
/// stored, so equal polynomials compare equal.
class NcPoly {
public:
    using CoeffMap = std::map<Word, cplx, WordOrder>;

    NcPoly(std::size_t g, std::size_t h);

    std::size_t arity() const { return g_; }
    std::size_t out_arity() const { return h_; }

    const CoeffMap& slot(std::size_t s) const { return slots_[s]; }
    cplx coeff(std::size_t s, const Word& w) const;
    void set_coeff(std::size_t s, const Word& w, cplx c);
    void add_coeff(std::size_t s, const Word& w, cplx c);

    bool is_zero() const;
    std::size_t degree() const;

    /// Polynomial with the empty-word coefficients removed.
    NcPoly drop_constant() const;

    friend bool operator==(const NcPoly& a, const NcPoly& b) {
        return a.g_ == b.g_ && a.h_ == b.h_ && a.slots_ == b.slots_;
    }

private:
    std::size_t g_, h_;
    std::vector<CoeffMap> slots_;
};

NcPoly operator+(const NcPoly& a, const NcPoly& b);
NcPoly operator-(const NcPoly& a, const NcPoly& b);
NcPoly operator*(const NcPoly& a, const NcPoly& b);  // h = 1 only
NcPoly operator*(cplx s, const NcPoly& a);

/// Point evaluation: slot s evaluates to sum_w coeff(w) X_{w_1} ... X_{w_k},
/// with the empty word contributing coeff * I.
MatrixTuple eval_poly(const NcPoly& p, const MatrixTuple& x);

CMatrix eval_word(const Word& w, const MatrixTuple& x);

/// Formal derivative into demilinear form: each word splits at every letter
/// position, D w(X)[H] = sum_j X_{w_1}..X_{w_{j-1}} H_{w_j} X_{w_{j+1}}..X_{w_k}.
DemiPoly formal_derivative(const NcPoly& p);

std::string to_string(const NcPoly& p);

struct ParseOptions {
    std::size_t degree_cap = 12;
};

/// Parse an nc polynomial expression; h slots separated by ';'.
/// Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
/// factor := base ('^' uint)?; base := 'x' uint | complexLit | '(' expr ')'.
NcPoly parse_poly(const std::string& text, std::size_t g, std::size_t h,
                  const ParseOptions& opts = {});

/// Syntax or range error with the offending position in the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos);
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

std::string format_double(double v);
std::string format_complex(cplx v);

}  // namespace freepot
