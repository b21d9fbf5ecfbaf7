#include "svv/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace svv {

DensityMatrix::DensityMatrix(const HermMat& h, double psd_tol, double trace_tol)
    : herm_(h) {
    const double tr = h.mat().trace().real();
    if (std::abs(tr - 1.0) > trace_tol)
        throw InvalidInput("DensityMatrix: trace " + std::to_string(tr) + " != 1");
    const EighResult es = eigh(h);
    if (es.eigenvalues.minCoeff() < -psd_tol)
        throw InvalidInput("DensityMatrix: negative eigenvalue " +
                           std::to_string(es.eigenvalues.minCoeff()));
}

Channel::Channel(std::vector<CMat> kraus, double completeness_tol)
    : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw InvalidInput("Channel: empty Kraus list");
    const Eigen::Index din = kraus_[0].cols(), dout = kraus_[0].rows();
    CMat acc = CMat::Zero(din, din);
    for (const CMat& k : kraus_) {
        if (k.rows() != dout || k.cols() != din)
            throw InvalidInput("Channel: inconsistent Kraus dimensions");
        acc += k.adjoint() * k;
    }
    const double dev = (acc - CMat(CMat::Identity(din, din))).norm();
    if (dev > completeness_tol)
        throw InvalidInput("Channel: Kraus completeness residual " + std::to_string(dev));
}

CMat Channel::apply(const CMat& rho) const {
    CMat out = CMat::Zero(dimOut(), dimOut());
    for (const CMat& k : kraus_) out += k * rho * k.adjoint();
    return out;
}

BipartiteOp Channel::apply_first(const BipartiteOp& rho) const {
    if (rho.dimA() != dimIn())
        throw InvalidInput("Channel::apply_first: first factor dimension mismatch");
    const Eigen::Index dB = rho.dimB();
    CMat out = CMat::Zero(dimOut() * dB, dimOut() * dB);
    const CMat idB = CMat::Identity(dB, dB);
    for (const CMat& k : kraus_) {
        const CMat kk = kron(k, idB);
        out += kk * rho.mat() * kk.adjoint();
    }
    return BipartiteOp(out, dimOut(), dB);
}

EighResult eigh(const HermMat& h) {
    Eigen::SelfAdjointEigenSolver<CMat> solver(h.mat());
    if (solver.info() != Eigen::Success)
        throw NumericError("eigh: iteration did not converge");
    return EighResult{solver.eigenvalues(), solver.eigenvectors()};
}

RVec singular_values(const CMat& m) {
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues();
}

HermMat herm_power(const HermMat& h, double exponent, double floor) {
    EighResult es = eigh(h);
    const Eigen::Index d = h.dim();
    RVec lam = es.eigenvalues;
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < d; ++i) {
        if (lam[i] < 0) {
            if (lam[i] < -1e-10 * scale)
                throw InvalidInput("herm_power: input not PSD, eigenvalue " +
                                   std::to_string(lam[i]));
            lam[i] = 0.0;
        }
        lam[i] = std::max(lam[i], floor);
        if (lam[i] == 0.0) {
            if (exponent < 0)
                throw NumericError("herm_power: negative power of a singular matrix");
            lam[i] = (exponent == 0.0) ? 1.0 : 0.0;
        } else {
            lam[i] = std::pow(lam[i], exponent);
        }
    }
    CMat out = es.eigenvectors * lam.cast<Complex>().asDiagonal() *
               es.eigenvectors.adjoint();
    return HermMat::symmetrized(out);
}

CMat kron(const CMat& a, const CMat& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    CMat out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

CMat partial_trace(const BipartiteOp& op, Factor over) {
    const Eigen::Index dA = op.dimA(), dB = op.dimB();
    const CMat& m = op.mat();
    if (over == Factor::Second) {
        CMat out = CMat::Zero(dA, dA);
        for (Eigen::Index a = 0; a < dA; ++a)
            for (Eigen::Index a2 = 0; a2 < dA; ++a2)
                for (Eigen::Index b = 0; b < dB; ++b)
                    out(a, a2) += m(a * dB + b, a2 * dB + b);
        return out;
    }
    CMat out = CMat::Zero(dB, dB);
    for (Eigen::Index b = 0; b < dB; ++b)
        for (Eigen::Index b2 = 0; b2 < dB; ++b2)
            for (Eigen::Index a = 0; a < dA; ++a)
                out(b, b2) += m(a * dB + b, a * dB + b2);
    return out;
}

BipartiteOp swap_factors(const BipartiteOp& op) {
    const Eigen::Index dA = op.dimA(), dB = op.dimB();
    const CMat& m = op.mat();
    CMat out(dA * dB, dA * dB);
    for (Eigen::Index a = 0; a < dA; ++a)
        for (Eigen::Index b = 0; b < dB; ++b)
            for (Eigen::Index a2 = 0; a2 < dA; ++a2)
                for (Eigen::Index b2 = 0; b2 < dB; ++b2)
                    out(b * dA + a, b2 * dA + a2) = m(a * dB + b, a2 * dB + b2);
    return BipartiteOp(out, dB, dA);
}

namespace {

std::vector<Eigen::Index> strides_of(const std::vector<Eigen::Index>& dims) {
    std::vector<Eigen::Index> s(dims.size());
    Eigen::Index acc = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        s[k] = acc;
        acc *= dims[k];
    }
    return s;
}

}  // namespace

CMat permute_systems(const CMat& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<int>& perm) {
    const int n = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != n)
        throw InvalidInput("permute_systems: perm/dims size mismatch");
    Eigen::Index total = 1;
    for (Eigen::Index d : dims) total *= d;
    if (m.rows() != total || m.cols() != total)
        throw InvalidInput("permute_systems: matrix size does not match dims");

    std::vector<Eigen::Index> out_dims(n);
    for (int k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
    const auto in_str = strides_of(dims);
    const auto out_str = strides_of(out_dims);

    // map: output flat index -> input flat index
    std::vector<Eigen::Index> map(total);
    std::vector<Eigen::Index> idx(n);
    for (Eigen::Index o = 0; o < total; ++o) {
        Eigen::Index rem = o;
        for (int k = 0; k < n; ++k) {
            idx[k] = rem / out_str[k];
            rem %= out_str[k];
        }
        Eigen::Index in = 0;
        for (int k = 0; k < n; ++k) in += idx[k] * in_str[perm[k]];
        map[o] = in;
    }
    CMat out(total, total);
    for (Eigen::Index i = 0; i < total; ++i)
        for (Eigen::Index j = 0; j < total; ++j)
            out(i, j) = m(map[i], map[j]);
    return out;
}

CMat partial_trace_multi(const CMat& m, const std::vector<Eigen::Index>& dims,
                         const std::vector<int>& traced) {
    // bring traced factors to the back, then fold into a bipartite trace
    const int n = static_cast<int>(dims.size());
    std::vector<bool> is_traced(n, false);
    for (int t : traced) is_traced[t] = true;
    std::vector<int> perm;
    for (int k = 0; k < n; ++k)
        if (!is_traced[k]) perm.push_back(k);
    for (int k = 0; k < n; ++k)
        if (is_traced[k]) perm.push_back(k);
    CMat re = permute_systems(m, dims, perm);
    Eigen::Index keep = 1, drop = 1;
    for (int k = 0; k < n; ++k) (is_traced[k] ? drop : keep) *= dims[k];
    return partial_trace(BipartiteOp(re, keep, drop), Factor::Second);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw InvalidInput("trace_distance: dimension mismatch");
    const HermMat diff = HermMat::symmetrized(rho.mat() - sigma.mat());
    return 0.5 * eigh(diff).eigenvalues.cwiseAbs().sum();
}

double von_neumann_entropy(const HermMat& rho) {
    const RVec lam = eigh(rho).eigenvalues;
    double h = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        const double x = lam[i];
        if (x > 0) h -= x * std::log(x);
    }
    return h;
}

CMat identity(Eigen::Index d) { return CMat::Identity(d, d); }

}  // namespace svv
