#include "svv/entropy.hpp"

#include "svv/linalg.hpp"
#include "svv/optim.hpp"
#include "svv/rng.hpp"

#include <cmath>
#include <limits>

namespace svv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double sandwiched_divergence(const DensityMatrix& rho, const HermMat& sigma,
                             const RenyiOrder& alpha) {
    if (rho.dim() != sigma.dim())
        throw InvalidInput("sandwiched_divergence: dimension mismatch");
    const EighResult es = eigh(sigma);
    const double smax = es.eigenvalues.maxCoeff();
    if (es.eigenvalues.minCoeff() < -1e-10 * std::max(1.0, smax))
        throw InvalidInput("sandwiched_divergence: sigma is not PSD");
    const double supp_cut = 1e-12 * std::max(smax, 1e-300);

    // support check: mass of rho on ker(sigma)
    double kernel_mass = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
        if (es.eigenvalues[i] <= supp_cut) {
            const CVec v = es.eigenvectors.col(i);
            kernel_mass += std::real((v.adjoint() * rho.mat() * v)(0, 0));
        }
    }
    if (kernel_mass > 1e-10) return kInf;

    if (alpha.is_one()) {
        double tr_rho_log_rho = -von_neumann_entropy(rho.herm());
        double tr_rho_log_sigma = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
            if (es.eigenvalues[i] > supp_cut) {
                const CVec v = es.eigenvectors.col(i);
                const double w = std::real((v.adjoint() * rho.mat() * v)(0, 0));
                tr_rho_log_sigma += w * std::log(es.eigenvalues[i]);
            }
        }
        return tr_rho_log_rho - tr_rho_log_sigma;
    }

    const double ap = alpha.conjugate();  // finite for alpha > 1 and alpha = inf
    const double expo = -1.0 / (2.0 * ap);
    RVec powd = RVec::Zero(es.eigenvalues.size());
    for (Eigen::Index i = 0; i < powd.size(); ++i)
        if (es.eigenvalues[i] > supp_cut) powd[i] = std::pow(es.eigenvalues[i], expo);
    const CMat s = es.eigenvectors * powd.cast<Complex>().asDiagonal() *
                   es.eigenvectors.adjoint();
    const CMat w = s * rho.mat() * s;
    const double nrm =
        schatten_norm_from_values(psd_eigenvalues(w), alpha.as_schatten());
    return ap * std::log(nrm);
}

double cond_vn_entropy(const BipartiteOp& rho_yx) {
    const HermMat full = HermMat::symmetrized(rho_yx.mat());
    const HermMat margin_y =
        HermMat::symmetrized(partial_trace(rho_yx, Factor::Second));
    return von_neumann_entropy(full) - von_neumann_entropy(margin_y);
}

EntropyResult cond_renyi_entropy(const BipartiteOp& rho_yx, const RenyiOrder& alpha,
                                 PQQuery base) {
    EntropyResult out;
    if (alpha.is_one()) {
        out.value = cond_vn_entropy(rho_yx);
        out.norm.value = 1.0;
        out.norm.converged = true;
        out.norm.bound_kind = BoundKind::exact;
        out.norm.tol = base.tol;
        return out;
    }
    out.norm = norm_1alpha(rho_yx, alpha.as_schatten(), base);
    out.value = -alpha.conjugate() * std::log(out.norm.value);
    return out;
}

EntropyResult w_alpha(const BipartiteOp& rho_yx, const RenyiOrder& alpha, PQQuery base) {
    const Eigen::Index dX = rho_yx.dimB();
    const CMat rho_y = partial_trace(rho_yx, Factor::Second);
    const CMat prod = kron(rho_y, identity(dX) / double(dX));
    const BipartiteOp diff(CMat(rho_yx.mat() - prod), rho_yx.dimA(), dX);
    base.p = SchattenOrder::finite(1.0);
    base.q = alpha.as_schatten();
    EntropyResult out;
    if (!alpha.is_inf() && alpha.value() == 1.0) {
        // trace norm: the Jordan split is exact
        out.norm = pq_norm_hermitian_upper(diff, base);
        out.norm.bound_kind = BoundKind::exact;
    } else {
        out.norm = pq_norm_hermitian_upper(diff, base);
    }
    out.value = out.norm.value;
    return out;
}

CoherentResult coherent_info_alpha(const Channel& phi, const RenyiOrder& alpha,
                                   CoherentOptions opts) {
    const Eigen::Index dX = phi.dimIn();
    const Eigen::Index dR = dX;
    const Eigen::Index n = dX * dR;

    PQQuery inner = opts.inner;
    inner.seed = Seed(opts.seed.derive("coh-inner", 0));

    auto state_value = [&](const CVec& psi_raw, PQResult* norm_out) {
        CVec psi = psi_raw / psi_raw.norm();
        const CMat pure = psi * psi.adjoint();
        const BipartiteOp rho_xr(pure, dX, dR);
        const BipartiteOp sigma_yr = phi.apply_first(rho_xr);
        if (alpha.is_one()) {
            const double h_y = von_neumann_entropy(
                HermMat::symmetrized(partial_trace(sigma_yr, Factor::Second)));
            const double h_yr =
                von_neumann_entropy(HermMat::symmetrized(sigma_yr.mat()));
            return h_y - h_yr;  // coherent information of the output state
        }
        const PQResult r = norm_1alpha(sigma_yr, alpha.as_schatten(), inner);
        if (norm_out) *norm_out = r;
        return r.value;
    };

    auto vec_to_ket = [&](const Eigen::VectorXd& x) {
        CVec psi(n);
        for (Eigen::Index i = 0; i < n; ++i) psi[i] = Complex(x[2 * i], x[2 * i + 1]);
        return psi;
    };

    ObjFn neg = [&](const Eigen::VectorXd& x) {
        const CVec psi = vec_to_ket(x);
        const double nn = psi.norm();
        if (!(nn > 1e-8)) return 1e6;
        return -state_value(psi, nullptr);
    };

    std::vector<Eigen::VectorXd> starts;
    {
        // maximally entangled start
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2 * n);
        for (Eigen::Index i = 0; i < dX; ++i) x0[2 * (i * dR + i)] = 1.0;
        starts.push_back(x0);
    }
    for (int k = 1; k < std::max(1, opts.restarts); ++k) {
        Rng rng(opts.seed.derive("coh-start", k));
        Eigen::VectorXd x(2 * n);
        for (Eigen::Index i = 0; i < 2 * n; ++i) x[i] = rng.gaussian();
        starts.push_back(x);
    }

    std::vector<double> vals(starts.size());
    std::vector<Eigen::VectorXd> xs(starts.size());
    for (std::size_t k = 0; k < starts.size(); ++k) {
        OptimOptions oo;
        oo.max_iter = opts.maxIter;
        oo.grad_tol = 0.01 * opts.tol;
        oo.fd_step = 1e-4;
        OptimResult r = bfgs_minimize(neg, starts[k], oo);
        vals[k] = -r.f;
        xs[k] = r.x;
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < vals.size(); ++k)
        if (vals[k] > vals[best]) best = k;

    double lo = vals[0], hi = vals[0];
    for (double v : vals) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    CoherentResult out;
    out.best_input = vec_to_ket(xs[best]);
    out.best_input /= out.best_input.norm();
    out.spread = hi - lo;
    const double vbest = vals[best];
    if (alpha.is_one()) {
        out.value = vbest;
    } else {
        out.value = alpha.conjugate() * std::log(vbest);
    }
    out.certified = out.spread <= opts.tol * std::max(std::abs(vbest), 1.0);
    return out;
}

double continuity_bound(double eps, Eigen::Index d_x, const RenyiOrder& alpha) {
    if (eps < 0.0) throw InvalidInput("continuity_bound: eps must be >= 0");
    if (eps == 0.0) return 0.0;
    const double ap = alpha.conjugate();
    if (std::isinf(ap)) return kInf;  // the alpha -> 1 limit of the bound diverges
    return ap * std::log(1.0 + 2.0 * eps * std::pow(double(d_x), 2.0 / ap));
}

}  // namespace svv
