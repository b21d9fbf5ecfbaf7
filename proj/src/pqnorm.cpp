#include "svv/pqnorm.hpp"

#include "svv/linalg.hpp"
#include "svv/optim.hpp"
#include "svv/parallel.hpp"
#include "svv/rng.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace svv {

std::string bound_kind_str(BoundKind k) {
    switch (k) {
        case BoundKind::exact: return "exact";
        case BoundKind::upper: return "upper";
        case BoundKind::lower: return "lower";
    }
    return "?";
}

CMat sandwich_first(const CMat& s, const BipartiteOp& m) {
    const CMat k = kron(s, identity(m.dimB()));
    return k * m.mat() * k.adjoint();
}

RVec psd_eigenvalues(const CMat& herm) {
    RVec lam = eigh(HermMat::symmetrized(herm)).eigenvalues;
    for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = std::max(lam[i], 0.0);
    return lam;
}

namespace {

void require_psd(const BipartiteOp& m, const char* who) {
    const RVec lam = eigh(HermMat::symmetrized(m.mat())).eigenvalues;
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    if (!is_hermitian(m.mat(), 1e-8) || lam.minCoeff() < -1e-8 * scale)
        throw InvalidInput(std::string(who) + ": input operator is not PSD within tolerance");
}

// 1/r = 1/p - 1/q (> 0 assumed by callers)
double inv_r_of(const SchattenOrder& p, const SchattenOrder& q) {
    return p.reciprocal() - q.reciprocal();
}

// p > q in the extended ordering (1/p < 1/q)
bool p_gt_q(const SchattenOrder& p, const SchattenOrder& q) {
    return p.reciprocal() < q.reciprocal();
}

struct Spectral {
    RVec lam;
    CMat vecs;
};

Spectral spectral_of_param(const Eigen::VectorXd& x, Eigen::Index d) {
    const CMat h = vec_to_herm(x, d);
    const EighResult es = eigh(HermMat::symmetrized(h));
    return {es.eigenvalues, es.eigenvectors};
}

// Normalized positive eigenvalues exp(lam - max) / sum, floored relative to the
// largest one.
RVec softmax_floor(const RVec& lam, double floor_rel) {
    const double mx = lam.maxCoeff();
    RVec t(lam.size());
    double sum = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        t[i] = std::exp(lam[i] - mx);
        sum += t[i];
    }
    t /= sum;
    const double fl = floor_rel * t.maxCoeff();
    for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = std::max(t[i], fl);
    return t;
}

double pow_sum_norm(const RVec& vals, double r) {
    // (sum v^r)^(1/r) for positive vals, overflow-safe
    const double mx = vals.maxCoeff();
    if (mx <= 0) return 0.0;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < vals.size(); ++i) acc += std::pow(vals[i] / mx, r);
    return mx * std::pow(acc, 1.0 / r);
}

struct RestartOutcome {
    double value = 0.0;
    Eigen::VectorXd x;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
};

// Deterministic reduction over restart outcomes, ordered by restart index.
template <typename Better>
int pick_best(const std::vector<RestartOutcome>& outs, Better better) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(outs.size()); ++i)
        if (better(outs[i].value, outs[best].value)) best = i;
    return best;
}

double restart_spread(const std::vector<RestartOutcome>& outs) {
    double lo = outs[0].value, hi = outs[0].value;
    for (const auto& o : outs) {
        lo = std::min(lo, o.value);
        hi = std::max(hi, o.value);
    }
    return hi - lo;
}

std::vector<Eigen::VectorXd> make_starts(const BipartiteOp& m, const PQQuery& query,
                                         const char* tag) {
    const Eigen::Index dA = m.dimA();
    std::vector<Eigen::VectorXd> starts;
    starts.push_back(Eigen::VectorXd::Zero(dA * dA));  // maximally mixed
    // marginal of m on the first factor
    {
        CMat marg = partial_trace(m, Factor::Second);
        const EighResult es = eigh(HermMat::symmetrized(marg));
        RVec lam = es.eigenvalues;
        const double mx = std::max(lam.maxCoeff(), 1e-300);
        RVec lg(lam.size());
        for (Eigen::Index i = 0; i < lam.size(); ++i)
            lg[i] = std::log(std::max(lam[i], 1e-8 * mx));
        const CMat h = es.eigenvectors * lg.cast<Complex>().asDiagonal() *
                       es.eigenvectors.adjoint();
        starts.push_back(herm_to_vec(0.5 * (h + CMat(h.adjoint()))));
    }
    for (int k = static_cast<int>(starts.size()); k < std::max(1, query.restarts); ++k) {
        const HermMat h = random_hermitian(dA, query.seed.derive(tag, k));
        starts.push_back(herm_to_vec(h.mat()));
    }
    starts.resize(std::max(1, query.restarts), Eigen::VectorXd::Zero(dA * dA));
    return starts;
}

PQResult exact_result(double value, const HermMat& optimizer, double tol) {
    PQResult r;
    r.value = value;
    r.optimizer = optimizer;
    r.converged = true;
    r.bound_kind = BoundKind::exact;
    r.tol = tol;
    return r;
}

// Convex reformulation used for q = inf: the inf-form norm equals
// min ||S||_r over Hermitian S with S (x) I >= m, evaluated with a
// log-det barrier on the cone constraint.
PQResult inf_form_qinf_barrier(const BipartiteOp& m, const PQQuery& query, double r) {
    const Eigen::Index dA = m.dimA(), dB = m.dimB(), D = dA * dB;
    const CMat idB = identity(dB);
    const HermMat msym = HermMat::symmetrized(m.mat());
    const double lam_max = std::max(0.0, eigh(msym).eigenvalues.maxCoeff());
    const double scale = std::max(lam_max, 1e-30);

    auto slack_of = [&](const CMat& s) { return CMat(kron(s, idB) - msym.mat()); };

    auto feasible = [&](const Eigen::VectorXd& x) {
        const CMat s = vec_to_herm(x, dA);
        Eigen::LLT<CMat> llt_s(s);
        if (llt_s.info() != Eigen::Success) return false;
        Eigen::LLT<CMat> llt(slack_of(s));
        return llt.info() == Eigen::Success;
    };

    auto norm_r = [&](const RVec& lam) { return pow_sum_norm(lam, r); };

    double mu = scale * 0.1;
    Eigen::VectorXd x = herm_to_vec(CMat(1.5 * (lam_max + 0.1 * scale) * identity(dA)));
    long total_iters = 0;

    const double mu_final = 1e-13 * scale;
    while (true) {
        auto objective = [&](const Eigen::VectorXd& v) {
            const CMat s = vec_to_herm(v, dA);
            const EighResult es_s = eigh(HermMat::symmetrized(s));
            if (es_s.eigenvalues.minCoeff() <= 0) return std::numeric_limits<double>::infinity();
            const EighResult es_g = eigh(HermMat::symmetrized(slack_of(s)));
            if (es_g.eigenvalues.minCoeff() <= 0) return std::numeric_limits<double>::infinity();
            double logdet = 0.0;
            for (Eigen::Index i = 0; i < D; ++i) logdet += std::log(es_g.eigenvalues[i]);
            double logdet_s = 0.0;
            for (Eigen::Index i = 0; i < dA; ++i) logdet_s += std::log(es_s.eigenvalues[i]);
            return norm_r(es_s.eigenvalues) - mu * (logdet + logdet_s);
        };
        auto gradient = [&](const Eigen::VectorXd& v) {
            const CMat s = vec_to_herm(v, dA);
            const EighResult es_s = eigh(HermMat::symmetrized(s));
            RVec lam = es_s.eigenvalues;
            const double nr = norm_r(lam);
            RVec glam(lam.size());
            for (Eigen::Index i = 0; i < lam.size(); ++i)
                glam[i] = std::pow(lam[i] / nr, r - 1.0);
            CMat gn = es_s.eigenvectors * glam.cast<Complex>().asDiagonal() *
                      es_s.eigenvectors.adjoint();
            const CMat ginv = slack_of(s).inverse();
            const CMat tr_b = partial_trace(BipartiteOp(ginv, dA, dB), Factor::Second);
            const CMat sinv = s.inverse();
            CMat gh = gn - mu * (tr_b + sinv);
            gh = 0.5 * (gh + CMat(gh.adjoint()));
            // chain rule to the real parameter vector: off-diagonal entries
            // appear twice
            Eigen::VectorXd g = herm_to_vec(gh);
            for (Eigen::Index i = dA; i < g.size(); ++i) g[i] *= 2.0;
            return g;
        };

        OptimOptions opts;
        opts.max_iter = 200;
        opts.grad_tol = std::max(1e-12, 1e-4 * mu / scale);
        OptimResult stage = bfgs_minimize(objective, x, opts, gradient, feasible);
        x = stage.x;
        total_iters += stage.iterations;
        if (mu <= mu_final) break;
        mu = std::max(mu * 0.15, mu_final * 0.9999);
    }

    const CMat s_opt = vec_to_herm(x, dA);
    const RVec lam_s = psd_eigenvalues(s_opt);
    const double value = pow_sum_norm(lam_s.cwiseMax(1e-300), r);

    PQResult res;
    res.value = value;
    res.optimizer = HermMat::symmetrized(s_opt / value);
    res.iterations = total_iters;
    res.converged = true;
    res.bound_kind = BoundKind::exact;
    res.spread = mu_final * (D + dA);  // barrier duality gap at the final stage
    res.tol = query.tol;
    return res;
}

}  // namespace

PQResult pq_norm_inf_positive(const BipartiteOp& m, const PQQuery& query) {
    require_psd(m, "pq_norm_inf_positive");
    if (p_gt_q(query.p, query.q))
        throw InvalidInput("pq_norm_inf_positive: requires p <= q");
    const Eigen::Index dA = m.dimA();

    if (m.mat().norm() == 0.0)
        return exact_result(0.0, HermMat::symmetrized(identity(dA) / double(dA)), query.tol);

    // p == q: the norm collapses to the plain Schatten q-norm.
    if (query.p == query.q) {
        const double v = schatten_norm_from_values(psd_eigenvalues(m.mat()), query.q);
        return exact_result(v, HermMat::symmetrized(identity(dA)), query.tol);
    }

    const double inv_r = inv_r_of(query.p, query.q);
    const double r = 1.0 / inv_r;

    if (query.q.is_inf()) return inf_form_qinf_barrier(m, query, r);

    const double qv = query.q.value();
    auto objective_at = [&](const Eigen::VectorXd& x, HermMat* t_out) {
        const Spectral sp = spectral_of_param(x, dA);
        const RVec t = softmax_floor(sp.lam, kEigFloorRel);
        RVec tinv_sqrt(t.size());
        for (Eigen::Index i = 0; i < t.size(); ++i) tinv_sqrt[i] = 1.0 / std::sqrt(t[i]);
        const CMat s = sp.vecs * tinv_sqrt.cast<Complex>().asDiagonal() * sp.vecs.adjoint();
        const CMat w = sandwich_first(s, m);
        const double norm_w = schatten_norm_from_values(psd_eigenvalues(w),
                                                        SchattenOrder::finite(qv));
        const double norm_t = pow_sum_norm(t, r);
        if (t_out) {
            const CMat tm = sp.vecs * t.cast<Complex>().asDiagonal() * sp.vecs.adjoint();
            *t_out = HermMat::symmetrized(tm);
        }
        return norm_t * norm_w;
    };
    ObjFn objective = [&](const Eigen::VectorXd& x) { return objective_at(x, nullptr); };

    const auto starts = make_starts(m, query, "pq-inf");
    std::vector<RestartOutcome> outs(starts.size());
    const int iter_cap =
        std::max(50, query.maxIter / std::max<int>(1, static_cast<int>(starts.size())));
    parallel_for(
        static_cast<long>(starts.size()),
        [&](long k) {
            OptimOptions opts;
            opts.max_iter = iter_cap;
            opts.grad_tol = 0.01 * query.tol;
            opts.fd_step = 1e-5;
            opts.record_history = query.record_history;
            OptimResult o = bfgs_minimize(objective, starts[k], opts);
            outs[k] = {o.f, o.x, o.iterations, o.converged, std::move(o.history)};
        },
        query.threads);

    const int best = pick_best(outs, [](double a, double b) { return a < b; });
    PQResult res;
    HermMat t_best;
    res.value = objective_at(outs[best].x, &t_best);
    res.optimizer = t_best;
    for (const auto& o : outs) res.iterations += o.iterations;
    res.converged = outs[best].converged;
    res.spread = restart_spread(outs);
    res.bound_kind = (res.converged && res.spread <= query.tol * std::max(res.value, 1e-300))
                         ? BoundKind::exact
                         : BoundKind::upper;
    res.tol = query.tol;
    res.history = outs[best].history;
    return res;
}

PQResult pq_norm_sup_positive(const BipartiteOp& m, const PQQuery& query) {
    require_psd(m, "pq_norm_sup_positive");
    // here query.q is the outer exponent, query.p the inner one; need p <= q
    if (p_gt_q(query.p, query.q))
        throw InvalidInput("pq_norm_sup_positive: requires inner exponent <= outer");
    const Eigen::Index dA = m.dimA();

    if (m.mat().norm() == 0.0)
        return exact_result(0.0, HermMat::symmetrized(identity(dA) / double(dA)), query.tol);

    // q == p: the supremum sits at A = I.
    if (query.p == query.q) {
        const double v = schatten_norm_from_values(psd_eigenvalues(m.mat()), query.p);
        return exact_result(v, HermMat::symmetrized(identity(dA)), query.tol);
    }

    const double inv_r = inv_r_of(query.p, query.q);
    const double two_r = 2.0 / inv_r;

    auto objective_at = [&](const Eigen::VectorXd& x, HermMat* a_out) {
        const Spectral sp = spectral_of_param(x, dA);
        RVec a = softmax_floor(sp.lam, 0.0);
        const double norm_2r = pow_sum_norm(a, two_r);
        a /= norm_2r;
        const CMat am = sp.vecs * a.cast<Complex>().asDiagonal() * sp.vecs.adjoint();
        const CMat w = sandwich_first(am, m);
        if (a_out) *a_out = HermMat::symmetrized(am);
        return schatten_norm_from_values(psd_eigenvalues(w), query.p);
    };
    ObjFn neg = [&](const Eigen::VectorXd& x) { return -objective_at(x, nullptr); };

    const auto starts = make_starts(m, query, "pq-sup");
    std::vector<RestartOutcome> outs(starts.size());
    const int iter_cap =
        std::max(50, query.maxIter / std::max<int>(1, static_cast<int>(starts.size())));
    parallel_for(
        static_cast<long>(starts.size()),
        [&](long k) {
            OptimOptions opts;
            opts.max_iter = iter_cap;
            opts.grad_tol = 0.01 * query.tol;
            opts.record_history = query.record_history;
            OptimResult o = bfgs_minimize(neg, starts[k], opts);
            outs[k] = {-o.f, o.x, o.iterations, o.converged, std::move(o.history)};
        },
        query.threads);

    const int best = pick_best(outs, [](double a, double b) { return a > b; });
    PQResult res;
    HermMat a_best;
    res.value = objective_at(outs[best].x, &a_best);
    res.optimizer = a_best;
    for (const auto& o : outs) res.iterations += o.iterations;
    res.converged = outs[best].converged;
    res.spread = restart_spread(outs);
    res.bound_kind = (res.converged && res.spread <= query.tol * std::max(res.value, 1e-300))
                         ? BoundKind::exact
                         : BoundKind::lower;
    res.tol = query.tol;
    res.history = outs[best].history;
    return res;
}

PQResult pq_norm_hermitian_upper(const BipartiteOp& m, const PQQuery& query) {
    if (!is_hermitian(m.mat(), 1e-8))
        throw InvalidInput("pq_norm_hermitian_upper: input must be Hermitian");
    const Eigen::Index dA = m.dimA(), dB = m.dimB();
    const EighResult es = eigh(HermMat::symmetrized(m.mat()));
    RVec pos = es.eigenvalues.cwiseMax(0.0);
    RVec neg = (-es.eigenvalues).cwiseMax(0.0);
    const double scale = std::max(es.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
    auto rebuild = [&](const RVec& lam) {
        return CMat(es.eigenvectors * lam.cast<Complex>().asDiagonal() *
                    es.eigenvectors.adjoint());
    };

    const bool has_pos = pos.maxCoeff() > 1e-14 * scale;
    const bool has_neg = neg.maxCoeff() > 1e-14 * scale;
    if (!has_pos && !has_neg)
        return exact_result(0.0, HermMat::symmetrized(identity(dA) / double(dA)), query.tol);

    if (!has_neg) return pq_norm_inf_positive(BipartiteOp(rebuild(pos), dA, dB), query);
    if (!has_pos) return pq_norm_inf_positive(BipartiteOp(rebuild(neg), dA, dB), query);

    const PQResult rp = pq_norm_inf_positive(BipartiteOp(rebuild(pos), dA, dB), query);
    const PQResult rn = pq_norm_inf_positive(BipartiteOp(rebuild(neg), dA, dB), query);
    PQResult res;
    res.value = rp.value + rn.value;
    res.optimizer = rp.value >= rn.value ? rp.optimizer : rn.optimizer;
    res.iterations = rp.iterations + rn.iterations;
    res.converged = rp.converged && rn.converged;
    res.spread = rp.spread + rn.spread;
    res.bound_kind = BoundKind::upper;
    res.tol = query.tol;
    return res;
}

PQResult norm_1alpha(const BipartiteOp& m, const SchattenOrder& alpha, PQQuery base) {
    base.p = SchattenOrder::finite(1.0);
    base.q = alpha;
    if (!alpha.is_inf() && alpha.value() == 1.0) {
        require_psd(m, "norm_1alpha");
        const double v = psd_eigenvalues(m.mat()).sum();
        return exact_result(v, HermMat::symmetrized(identity(m.dimA()) / double(m.dimA())),
                            base.tol);
    }
    return pq_norm_inf_positive(m, base);
}

}  // namespace svv
