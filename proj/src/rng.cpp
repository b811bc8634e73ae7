#include "freepot/rng.hpp"

#include <cmath>

namespace freepot {

std::uint64_t SplitRng::mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over the combined state
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

cplx complex_gaussian(std::mt19937_64& eng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    const double re = n01(eng);
    const double im = n01(eng);
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

CMatrix random_gaussian_matrix(std::size_t n, std::mt19937_64& eng) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n * n; ++i) m.data()[i] = complex_gaussian(eng);
    return m;
}

MatrixTuple random_gaussian_tuple(std::size_t g, std::size_t n, std::mt19937_64& eng) {
    std::vector<CMatrix> comps;
    comps.reserve(g);
    for (std::size_t i = 0; i < g; ++i) comps.push_back(random_gaussian_matrix(n, eng));
    return MatrixTuple(std::move(comps));
}

CMatrix haar_unitary(std::size_t n, std::mt19937_64& eng) {
    CMatrix ginibre = random_gaussian_matrix(n, eng);
    auto [q, r] = qr_decompose(ginibre);
    // divide out diagonal phases: U = Q * diag(r_kk / |r_kk|)
    for (std::size_t k = 0; k < n; ++k) {
        const cplx rkk = r.at(k, k);
        const double a = std::abs(rkk);
        const cplx phase = a == 0.0 ? cplx{1.0} : rkk / a;
        for (std::size_t i = 0; i < n; ++i) q.at(i, k) *= phase;
    }
    return q;
}

Similarity random_similarity(std::size_t n, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    CMatrix s = CMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = std::sqrt(u01(eng));
            const double th = 2.0 * M_PI * u01(eng);
            s.at(i, j) = cplx{r * std::cos(th), r * std::sin(th)};
        }
    return Similarity(std::move(s));
}

}  // namespace freepot
