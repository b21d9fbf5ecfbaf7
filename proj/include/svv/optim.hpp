#pragma once

#include "svv/types.hpp"

#include <functional>

namespace svv {

using ObjFn = std::function<double(const Eigen::VectorXd&)>;
using GradFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using FeasibleFn = std::function<bool(const Eigen::VectorXd&)>;

struct OptimOptions {
    int max_iter = 300;
    double grad_tol = 1e-9;   // inf-norm of gradient, relative to max(1,|f|)
    double step_tol = 1e-13;  // inf-norm of accepted step
    double fd_step = 1e-5;    // central-difference step, scaled per coordinate
    bool record_history = false;
};

struct OptimResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;  // best objective after each iteration
};

Eigen::VectorXd fd_gradient(const ObjFn& f, const Eigen::VectorXd& x, double step);

// Quasi-Newton (inverse-BFGS) minimizer with Armijo backtracking. If grad is
// null the gradient is taken by central finite differences. If feasible is
// given, the line search rejects points outside the feasible region.
OptimResult bfgs_minimize(const ObjFn& f, const Eigen::VectorXd& x0,
                          const OptimOptions& opts, GradFn grad = nullptr,
                          FeasibleFn feasible = nullptr);

// Hermitian matrix <-> real parameter vector of length d*d:
// d diagonal entries, then (re, im) pairs for the upper triangle.
Eigen::VectorXd herm_to_vec(const CMat& h);
CMat vec_to_herm(const Eigen::VectorXd& v, Eigen::Index d);

}  // namespace svv
