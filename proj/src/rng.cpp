#include "svv/rng.hpp"

#include "svv/linalg.hpp"

#include <Eigen/QR>
#include <cmath>

namespace svv {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {
constexpr std::uint64_t fnv1a(const char* s, std::size_t n) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(s[i]);
        h *= 1099511628211ULL;
    }
    return h;
}
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

std::uint64_t Seed::derive(std::uint64_t index) const {
    std::uint64_t st = master ^ (0xA0761D6478BD642FULL * (index + 1));
    return splitmix64(st);
}

std::uint64_t Seed::derive(const std::string& tag, std::uint64_t index) const {
    std::uint64_t st = master ^ fnv1a(tag.data(), tag.size());
    st = splitmix64(st);
    st ^= 0xA0761D6478BD642FULL * (index + 1);
    return splitmix64(st);
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t st = seed;
    for (auto& w : s_) w = splitmix64(st);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Complex Rng::cgaussian() {
    const double re = gaussian(), im = gaussian();
    return Complex(re, im) / std::sqrt(2.0);
}

CMat Rng::ginibre(Eigen::Index rows, Eigen::Index cols) {
    CMat g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = cgaussian();
    return g;
}

namespace {

// QR with the phase convention diag(R) > 0, which makes Q Haar for Ginibre
// input and the result independent of the QR implementation's sign choices.
CMat phase_fixed_q(const CMat& g) {
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ() * CMat::Identity(g.rows(), g.cols());
    CMat r = CMat(qr.matrixQR().template triangularView<Eigen::Upper>());
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        const Complex ph = (a > 0) ? d / a : Complex(1, 0);
        q.col(j) *= ph;
    }
    return q;
}

}  // namespace

CMat haar_unitary(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 1) throw InvalidInput("haar_unitary: dim must be >= 1");
    Rng rng(seed);
    return phase_fixed_q(rng.ginibre(dim, dim));
}

DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
    if (rank < 1 || rank > dim) throw InvalidInput("random_density: need 1 <= rank <= dim");
    Rng rng(seed);
    const CMat g = rng.ginibre(dim, rank);
    CMat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(HermMat::symmetrized(rho));
}

HermMat random_hermitian(Eigen::Index dim, std::uint64_t seed) {
    Rng rng(seed);
    const CMat g = rng.ginibre(dim, dim);
    return HermMat::symmetrized(0.5 * (g + CMat(g.adjoint())));
}

Channel random_channel(Eigen::Index dimIn, Eigen::Index dimOut, Eigen::Index dimEnv,
                       std::uint64_t seed) {
    if (dimEnv * dimOut < dimIn)
        throw InvalidInput("random_channel: need dimEnv*dimOut >= dimIn");
    Rng rng(seed);
    const CMat v = phase_fixed_q(rng.ginibre(dimOut * dimEnv, dimIn));
    std::vector<CMat> kraus(dimEnv, CMat(dimOut, dimIn));
    // composite row index o*dimEnv + e, first-factor-major on (out, env)
    for (Eigen::Index e = 0; e < dimEnv; ++e)
        for (Eigen::Index o = 0; o < dimOut; ++o)
            for (Eigen::Index i = 0; i < dimIn; ++i)
                kraus[e](o, i) = v(o * dimEnv + e, i);
    return Channel(std::move(kraus));
}

Channel identity_channel(Eigen::Index dim) {
    return Channel({CMat(CMat::Identity(dim, dim))});
}

DensityMatrix random_multipartite_density(const std::vector<Eigen::Index>& dims,
                                          Eigen::Index dimEnv, std::uint64_t seed) {
    Eigen::Index d = 1;
    for (Eigen::Index x : dims) d *= x;
    Rng rng(seed);
    CVec psi(d * dimEnv);
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = rng.cgaussian();
    psi /= psi.norm();
    const CMat pure = psi * psi.adjoint();
    CMat rho = partial_trace(BipartiteOp(pure, d, dimEnv), Factor::Second);
    rho /= rho.trace().real();
    return DensityMatrix(HermMat::symmetrized(rho));
}

}  // namespace svv
