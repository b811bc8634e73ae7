#pragma once

#include <cstdint>
#include <random>

#include "freepot/tuple.hpp"

namespace freepot {

/// Deterministic splittable random stream. Substreams are derived from
/// (seed, index) so parallel consumers get identical draws regardless of
/// scheduling order.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : seed_(seed), engine_(mix(seed, 0x9e3779b97f4a7c15ull)) {}

    std::uint64_t seed() const { return seed_; }

    /// Independent engine for task `index`.
    std::mt19937_64 substream(std::uint64_t index) const {
        return std::mt19937_64(mix(seed_, index));
    }

    SplitRng split(std::uint64_t index) const { return SplitRng(mix(seed_, index)); }

    std::mt19937_64& engine() { return engine_; }

private:
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b);
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Standard complex Gaussian: (N(0,1) + i N(0,1)) / sqrt(2).
cplx complex_gaussian(std::mt19937_64& eng);

CMatrix random_gaussian_matrix(std::size_t n, std::mt19937_64& eng);
MatrixTuple random_gaussian_tuple(std::size_t g, std::size_t n, std::mt19937_64& eng);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal divided out. The uncorrected Q alone is not Haar.
CMatrix haar_unitary(std::size_t n, std::mt19937_64& eng);

/// I + strictly upper triangular noise with entries in the unit disk;
/// invertible with modest condition number by construction.
Similarity random_similarity(std::size_t n, std::mt19937_64& eng);

}  // namespace freepot
