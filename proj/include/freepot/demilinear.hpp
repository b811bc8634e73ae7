#pragma once

#include <functional>
#include <optional>

#include "freepot/domain.hpp"
#include "freepot/ncpoly.hpp"
#include "freepot/rng.hpp"

namespace freepot {

/// One demilinear term c * u(X) * H_i * v(X).
struct DemiKey {
    Word left;
    unsigned var;  // 1..g
    Word right;

    friend bool operator==(const DemiKey& a, const DemiKey& b) {
        return a.var == b.var && a.left == b.left && a.right == b.right;
    }
};

struct DemiKeyOrder {
    bool operator()(const DemiKey& a, const DemiKey& b) const {
        WordOrder lt;
        if (lt(a.left, b.left)) return true;
        if (lt(b.left, a.left)) return false;
        if (a.var != b.var) return a.var < b.var;
        return lt(a.right, b.right);
    }
};

/// Demilinear nc polynomial: per output slot a canonical finite set of terms,
/// at most one per (left, var, right) triple. Represents
/// T(X,H) = sum c * u(X) * H_i * v(X).
class DemiPoly {
public:
    using TermMap = std::map<DemiKey, cplx, DemiKeyOrder>;

    DemiPoly(std::size_t g, std::size_t h);

    std::size_t arity() const { return g_; }
    std::size_t out_arity() const { return h_; }

    const TermMap& slot(std::size_t s) const { return slots_[s]; }
    void add_term(std::size_t s, const DemiKey& key, cplx c);
    cplx coeff(std::size_t s, const DemiKey& key) const;

    bool is_zero() const;

    friend bool operator==(const DemiPoly& a, const DemiPoly& b) {
        return a.g_ == b.g_ && a.h_ == b.h_ && a.slots_ == b.slots_;
    }

private:
    std::size_t g_, h_;
    std::vector<TermMap> slots_;
};

MatrixTuple eval_demi(const DemiPoly& t, const MatrixTuple& x, const MatrixTuple& h);
std::string to_string(const DemiPoly& t);

/// Parse a demilinear expression: same grammar as parse_poly plus h# factors,
/// exactly one per monomial.
DemiPoly parse_demi(const std::string& text, std::size_t g, std::size_t h,
                    const ParseOptions& opts = {});

enum class Provenance { symbolic, black_box };

/// A free demilinear map T(X,H), symbolic or black-box. Black-box evaluators
/// get a construction-time linearity probe (three random triples); failing it
/// is a hard error. Evaluators must be safe to invoke concurrently.
class DemilinearMap {
public:
    using Evaluator = std::function<MatrixTuple(const MatrixTuple&, const MatrixTuple&)>;

    DemilinearMap(const DemiPoly& poly);
    DemilinearMap(std::size_t g, std::size_t h, Evaluator eval,
                  std::uint64_t probe_seed = 7);

    std::size_t arity() const { return g_; }
    std::size_t out_arity() const { return h_; }
    Provenance provenance() const { return provenance_; }
    const std::optional<DemiPoly>& poly() const { return poly_; }

    MatrixTuple operator()(const MatrixTuple& x, const MatrixTuple& h) const;

private:
    std::size_t g_, h_;
    Evaluator eval_;
    Provenance provenance_;
    std::optional<DemiPoly> poly_;
};

/// DT(X,H)[K,L] read off the upper-right block of T at the doubled level:
/// T([[X,K],[0,X]], [[H,L],[0,H]]) = [[T(X,H), DT(X,H)[K,L]], [0, T(X,H)]].
MatrixTuple second_derivative(const DemilinearMap& t, const MatrixTuple& x,
                              const MatrixTuple& h, const MatrixTuple& k,
                              const MatrixTuple& l);

/// DT(X,H)[K,0] - DT(X,K)[H,0]; identically zero iff T is a free derivative.
MatrixTuple free_curl(const DemilinearMap& t, const MatrixTuple& x,
                      const MatrixTuple& h, const MatrixTuple& k);

struct CurlReport {
    double max_residual = 0.0;
    bool curl_free = false;
    std::vector<std::size_t> levels_tested;
    bool only_level_one = false;  // 1x1 matrices commute; verdict is degenerate
    MatrixTuple worst_x, worst_h, worst_k;
};

/// Monte-Carlo free-curl test: samples (X, H, K) with X in the domain and
/// H, K unit-Frobenius; residuals are relative to 1 + probe scale.
CurlReport curl_free_test(const DemilinearMap& t, const FreeDomain& domain,
                          std::size_t samples, SplitRng rng, double tol);

struct ExactnessWitness {
    std::size_t slot;
    Word word;
    std::vector<cplx> coeffs;  // one per decomposition position
};

struct ExactnessReport {
    bool exact = false;
    std::optional<NcPoly> potential;  // present iff exact; constant term zero
    std::optional<ExactnessWitness> witness;
};

/// Exact symbolic antiderivative: T = Df iff for every word m all decomposition
/// coefficients c(u, i, v) with u x_i v = m agree (missing ones count as zero);
/// f's coefficient on m is that common value.
ExactnessReport symbolic_antiderivative(const DemiPoly& t);

bool symbolic_curl_free(const DemiPoly& t);

}  // namespace freepot
