#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace svv {

using Complex = std::complex<double>;

// Dense complex matrix, row-major so that file payloads map directly onto
// the storage.
using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Numerical failure inside an algorithm (non-convergence, singular input, ...).
// CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Violated precondition or malformed input. CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

inline double frob(const CMat& m) { return m.norm(); }

inline CMat adjoint(const CMat& m) { return m.adjoint(); }

inline bool is_hermitian(const CMat& m, double tol_rel = 1e-10) {
    if (m.rows() != m.cols()) return false;
    return (m - CMat(m.adjoint())).norm() <= tol_rel * std::max(1.0, m.norm());
}

// Square matrix constrained to be self-adjoint. Construction symmetrizes the
// payload after checking the anti-Hermitian part is within tolerance.
class HermMat {
public:
    HermMat() = default;
    explicit HermMat(const CMat& m, double tol_rel = 1e-10) {
        if (m.rows() != m.cols())
            throw InvalidInput("HermMat: matrix must be square");
        const double dev = (m - CMat(m.adjoint())).norm();
        if (dev > tol_rel * std::max(1.0, m.norm()))
            throw InvalidInput("HermMat: not Hermitian within tolerance, deviation " +
                               std::to_string(dev));
        mat_ = 0.5 * (m + CMat(m.adjoint()));
    }
    static HermMat symmetrized(const CMat& m) {
        HermMat h;
        h.mat_ = 0.5 * (m + CMat(m.adjoint()));
        return h;
    }
    const CMat& mat() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

private:
    CMat mat_;
};

// Positive operator with unit trace.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(const HermMat& h, double psd_tol = 1e-10, double trace_tol = 1e-10);
    explicit DensityMatrix(const CMat& m) : DensityMatrix(HermMat(m)) {}

    const CMat& mat() const { return herm_.mat(); }
    const HermMat& herm() const { return herm_; }
    Eigen::Index dim() const { return herm_.dim(); }

private:
    HermMat herm_;
};

enum class Factor { First, Second };

// Operator on a two-factor tensor product space. Composite row index is
// i = a*dimB + b (first-factor-major); the first factor is the one the
// one-sided multipliers A (x) I act on, i.e. it carries the conditioning
// subsystem throughout.
class BipartiteOp {
public:
    BipartiteOp() = default;
    BipartiteOp(const CMat& m, Eigen::Index dimA, Eigen::Index dimB)
        : mat_(m), dimA_(dimA), dimB_(dimB) {
        if (dimA < 1 || dimB < 1)
            throw InvalidInput("BipartiteOp: factor dimensions must be >= 1");
        if (m.rows() != m.cols() || m.rows() != dimA * dimB)
            throw InvalidInput("BipartiteOp: matrix must be square of size dimA*dimB");
    }

    const CMat& mat() const { return mat_; }
    Eigen::Index dimA() const { return dimA_; }
    Eigen::Index dimB() const { return dimB_; }
    Eigen::Index dim() const { return dimA_ * dimB_; }

private:
    CMat mat_;
    Eigen::Index dimA_ = 0;
    Eigen::Index dimB_ = 0;
};

// Completely positive trace-preserving map in Kraus form.
class Channel {
public:
    Channel() = default;
    explicit Channel(std::vector<CMat> kraus, double completeness_tol = 1e-8);

    const std::vector<CMat>& kraus() const { return kraus_; }
    Eigen::Index dimIn() const { return kraus_.empty() ? 0 : kraus_[0].cols(); }
    Eigen::Index dimOut() const { return kraus_.empty() ? 0 : kraus_[0].rows(); }

    // Kraus-sum action on a state of matching dimension.
    CMat apply(const CMat& rho) const;
    // (K (x) I) rho (K^dag (x) I): channel acting on the first factor.
    BipartiteOp apply_first(const BipartiteOp& rho) const;

private:
    std::vector<CMat> kraus_;
};

// Master seed plus the per-sample derivation rule. Identical (master, index)
// pairs give identical streams.
struct Seed {
    std::uint64_t master = 0;
    Seed() = default;
    explicit Seed(std::uint64_t m) : master(m) {}
    std::uint64_t derive(std::uint64_t index) const;
    std::uint64_t derive(const std::string& tag, std::uint64_t index) const;
};

}  // namespace svv
