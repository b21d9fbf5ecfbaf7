#include "svv/optim.hpp"

#include <cmath>

namespace svv {

Eigen::VectorXd fd_gradient(const ObjFn& f, const Eigen::VectorXd& x, double step) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd g(n);
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double h = step * std::max(1.0, std::abs(x[i]));
        const double xi = x[i];
        xp[i] = xi + h;
        const double fp = f(xp);
        xp[i] = xi - h;
        const double fm = f(xp);
        xp[i] = xi;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

OptimResult bfgs_minimize(const ObjFn& f, const Eigen::VectorXd& x0,
                          const OptimOptions& opts, GradFn grad, FeasibleFn feasible) {
    const Eigen::Index n = x0.size();
    OptimResult res;
    res.x = x0;
    res.f = f(x0);

    auto gradient = [&](const Eigen::VectorXd& x) {
        return grad ? grad(x) : fd_gradient(f, x, opts.fd_step);
    };

    Eigen::MatrixXd binv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd x = x0;
    double fx = res.f;
    Eigen::VectorXd g = gradient(x);

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (g.cwiseAbs().maxCoeff() <= opts.grad_tol * std::max(1.0, std::abs(fx))) {
            res.converged = true;
            break;
        }
        Eigen::VectorXd dir = -(binv * g);
        double slope = g.dot(dir);
        if (!(slope < 0)) {  // reset on loss of descent
            binv.setIdentity();
            dir = -g;
            slope = g.dot(dir);
            if (!(slope < 0)) {
                res.converged = true;
                break;
            }
        }

        // Armijo backtracking, with optional feasibility constraint
        double t = 1.0;
        double ft = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            Eigen::VectorXd xt = x + t * dir;
            if (!feasible || feasible(xt)) {
                ft = f(xt);
                if (std::isfinite(ft) && ft <= fx + 1e-4 * t * slope) {
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        res.iterations = iter + 1;
        if (!accepted) {
            res.converged = g.cwiseAbs().maxCoeff() <=
                            1e3 * opts.grad_tol * std::max(1.0, std::abs(fx));
            break;
        }

        const Eigen::VectorXd step = t * dir;
        const Eigen::VectorXd xn = x + step;
        Eigen::VectorXd gn = gradient(xn);
        const Eigen::VectorXd y = gn - g;
        const double sy = step.dot(y);
        if (sy > 1e-12 * step.norm() * y.norm()) {
            const Eigen::VectorXd by = binv * y;
            const double yby = y.dot(by);
            const double rho = 1.0 / sy;
            // standard inverse-BFGS update
            binv += ((sy + yby) * rho * rho) * (step * step.transpose());
            binv -= rho * (by * step.transpose() + step * by.transpose());
        }
        x = xn;
        fx = ft;
        g = std::move(gn);
        if (fx < res.f) {
            res.f = fx;
            res.x = x;
        }
        if (opts.record_history) res.history.push_back(res.f);
        if (step.cwiseAbs().maxCoeff() <= opts.step_tol) {
            res.converged = true;
            break;
        }
    }
    if (res.iterations == 0 || g.cwiseAbs().maxCoeff() <=
                                   opts.grad_tol * std::max(1.0, std::abs(fx)))
        res.converged = true;
    return res;
}

Eigen::VectorXd herm_to_vec(const CMat& h) {
    const Eigen::Index d = h.rows();
    Eigen::VectorXd v(d * d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = h(i, i).real();
    Eigen::Index k = d;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) {
            v[k++] = h(i, j).real();
            v[k++] = h(i, j).imag();
        }
    return v;
}

CMat vec_to_herm(const Eigen::VectorXd& v, Eigen::Index d) {
    CMat h(d, d);
    for (Eigen::Index i = 0; i < d; ++i) h(i, i) = v[i];
    Eigen::Index k = d;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) {
            const Complex z(v[k], v[k + 1]);
            k += 2;
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    return h;
}

}  // namespace svv
