#pragma once

#include <functional>
#include <map>
#include <random>
#include <set>

#include "freepot/tuple.hpp"

namespace freepot {

/// Graded domain (Omega[n])_n. Built-in kinds are level-wise open and convex:
/// the whole space, and the operator-norm ball of radius r around c*I for a
/// scalar center tuple c (unitary-closed, not similarity-closed). Custom
/// domains supply a membership predicate and, when needed, anchors.
class FreeDomain {
public:
    enum class Kind { full, ball, custom };
    using Predicate = std::function<bool(const MatrixTuple&)>;

    static FreeDomain full_space(std::size_t g, std::set<std::size_t> levels);
    static FreeDomain ball(std::size_t g, double radius, std::vector<cplx> center,
                           std::set<std::size_t> levels);
    static FreeDomain custom(std::size_t g, Predicate member, std::set<std::size_t> levels,
                             bool connected);

    Kind kind() const { return kind_; }
    std::size_t arity() const { return g_; }
    const std::set<std::size_t>& levels() const { return levels_; }
    bool connected() const { return connected_; }

    /// Built-in kinds are convex at every level, so segments are valid paths.
    bool convex_levels() const { return kind_ != Kind::custom; }
    /// Ball domains are only closed under unitary conjugation.
    bool similarity_closed() const { return kind_ == Kind::full; }
    double radius() const { return radius_; }

    bool contains(const MatrixTuple& x) const;

    /// Interior point at the given level, well inside the boundary.
    MatrixTuple sample(std::size_t level, std::mt19937_64& eng) const;

    /// Default anchor Z_n: 0 for full space, the center for balls. Custom
    /// domains must have one registered via set_anchor.
    MatrixTuple anchor(std::size_t level) const;
    void set_anchor(std::size_t level, MatrixTuple z);
    bool has_anchor(std::size_t level) const;

private:
    FreeDomain(Kind k, std::size_t g, std::set<std::size_t> levels)
        : kind_(k), g_(g), levels_(std::move(levels)) {}

    Kind kind_;
    std::size_t g_;
    std::set<std::size_t> levels_;
    bool connected_ = true;
    double radius_ = 0.0;
    std::vector<cplx> center_;     // ball: one scalar per component
    Predicate member_;
    std::map<std::size_t, MatrixTuple> anchors_;
};

}  // namespace freepot
