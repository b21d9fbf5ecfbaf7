#pragma once

#include "svv/types.hpp"

#include <cstdint>

namespace svv {

// Counter-free deterministic generator. The stream is fully specified here
// (splitmix64 seeding of xoshiro256**), so identical seeds give bit-identical
// samples on any platform; nothing is delegated to <random> distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    // uniform in [0, 1)
    double uniform();
    double uniform(double lo, double hi);
    // standard normal via Box-Muller
    double gaussian();
    // complex standard normal, E|z|^2 = 1
    Complex cgaussian();

    // Ginibre matrix: i.i.d. complex standard normal entries.
    CMat ginibre(Eigen::Index rows, Eigen::Index cols);

private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-distributed unitary via QR of a Ginibre matrix with phase-fixed R.
CMat haar_unitary(Eigen::Index dim, std::uint64_t seed);

// Random rank-constrained density matrix: normalized G G^dag with G Ginibre
// dim x rank.
DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed);

// Random Hermitian matrix with Gaussian entries (GUE-like, unnormalized).
HermMat random_hermitian(Eigen::Index dim, std::uint64_t seed);

// Random cptp map from a Stinespring isometry with orthonormalized Gaussian
// columns; environment dimension dimEnv gives dimEnv Kraus operators.
Channel random_channel(Eigen::Index dimIn, Eigen::Index dimOut, Eigen::Index dimEnv,
                       std::uint64_t seed);

Channel identity_channel(Eigen::Index dim);

// Marginal of a Haar-random pure state on (prod dims) x dimEnv; dimEnv
// controls the rank.
DensityMatrix random_multipartite_density(const std::vector<Eigen::Index>& dims,
                                          Eigen::Index dimEnv, std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace svv
