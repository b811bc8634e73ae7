#include "freepot/domain.hpp"

#include "freepot/rng.hpp"

namespace freepot {

FreeDomain FreeDomain::full_space(std::size_t g, std::set<std::size_t> levels) {
    if (g == 0) throw std::invalid_argument("FreeDomain: arity must be positive");
    if (levels.empty()) throw std::invalid_argument("FreeDomain: level set must be nonempty");
    return FreeDomain(Kind::full, g, std::move(levels));
}

FreeDomain FreeDomain::ball(std::size_t g, double radius, std::vector<cplx> center,
                            std::set<std::size_t> levels) {
    if (g == 0) throw std::invalid_argument("FreeDomain: arity must be positive");
    if (levels.empty()) throw std::invalid_argument("FreeDomain: level set must be nonempty");
    if (!(radius > 0.0)) throw std::invalid_argument("FreeDomain: radius must be positive");
    if (center.size() != g)
        throw std::invalid_argument("FreeDomain: ball center needs one scalar per component");
    FreeDomain d(Kind::ball, g, std::move(levels));
    d.radius_ = radius;
    d.center_ = std::move(center);
    return d;
}

FreeDomain FreeDomain::custom(std::size_t g, Predicate member, std::set<std::size_t> levels,
                              bool connected) {
    if (g == 0) throw std::invalid_argument("FreeDomain: arity must be positive");
    if (levels.empty()) throw std::invalid_argument("FreeDomain: level set must be nonempty");
    if (!member) throw std::invalid_argument("FreeDomain: custom domain needs a predicate");
    FreeDomain d(Kind::custom, g, std::move(levels));
    d.member_ = std::move(member);
    d.connected_ = connected;
    return d;
}

bool FreeDomain::contains(const MatrixTuple& x) const {
    if (x.arity() != g_) return false;
    switch (kind_) {
        case Kind::full:
            return true;
        case Kind::ball: {
            const std::size_t n = x.level();
            for (std::size_t i = 0; i < g_; ++i) {
                CMatrix d = x[i] - center_[i] * CMatrix::identity(n);
                if (!(d.op_norm() < radius_)) return false;
            }
            return true;
        }
        case Kind::custom:
            return member_(x);
    }
    return false;
}

MatrixTuple FreeDomain::sample(std::size_t level, std::mt19937_64& eng) const {
    switch (kind_) {
        case Kind::full:
            return random_gaussian_tuple(g_, level, eng);
        case Kind::ball: {
            MatrixTuple gauss = random_gaussian_tuple(g_, level, eng);
            double worst = 0.0;
            for (std::size_t i = 0; i < g_; ++i) worst = std::max(worst, gauss[i].op_norm());
            std::uniform_real_distribution<double> u(0.1, 0.9);
            const double scale = worst == 0.0 ? 0.0 : radius_ * u(eng) / worst;
            MatrixTuple out = anchor(level);
            out += scale * gauss;
            return out;
        }
        case Kind::custom: {
            // rejection from a unit Gaussian cloud; custom domains near the
            // origin are the supported use case
            for (int attempt = 0; attempt < 4096; ++attempt) {
                MatrixTuple x = random_gaussian_tuple(g_, level, eng);
                if (member_(x)) return x;
            }
            throw std::runtime_error("FreeDomain: rejection sampling failed at level " +
                                     std::to_string(level));
        }
    }
    throw std::logic_error("FreeDomain: bad kind");
}

MatrixTuple FreeDomain::anchor(std::size_t level) const {
    auto it = anchors_.find(level);
    if (it != anchors_.end()) return it->second;
    switch (kind_) {
        case Kind::full:
            return MatrixTuple::zero(g_, level);
        case Kind::ball: {
            MatrixTuple z(g_, level);
            for (std::size_t i = 0; i < g_; ++i)
                z[i] = center_[i] * CMatrix::identity(level);
            return z;
        }
        case Kind::custom:
            throw std::runtime_error("FreeDomain: no anchor registered at level " +
                                     std::to_string(level));
    }
    throw std::logic_error("FreeDomain: bad kind");
}

void FreeDomain::set_anchor(std::size_t level, MatrixTuple z) {
    if (z.arity() != g_ || z.level() != level)
        throw std::invalid_argument("FreeDomain: anchor shape mismatch");
    if (!contains(z)) throw std::invalid_argument("FreeDomain: anchor outside domain");
    anchors_.insert_or_assign(level, std::move(z));
}

bool FreeDomain::has_anchor(std::size_t level) const {
    return anchors_.count(level) > 0 || kind_ != Kind::custom;
}

}  // namespace freepot
