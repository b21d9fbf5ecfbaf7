#pragma once

#include "svv/schatten.hpp"
#include "svv/types.hpp"

namespace svv {

// Parameters of a variational norm evaluation. For the inf-form p <= q is
// required; r is derived from 1/p = 1/q + 1/r.
struct PQQuery {
    SchattenOrder p = SchattenOrder::finite(1.0);
    SchattenOrder q = SchattenOrder::finite(2.0);
    double tol = 1e-7;
    int maxIter = 2000;
    int restarts = 8;
    Seed seed{20240915ULL};
    int threads = 1;  // restart-level parallelism
    bool record_history = false;
};

enum class BoundKind { exact, upper, lower };

std::string bound_kind_str(BoundKind k);

struct PQResult {
    double value = 0.0;
    HermMat optimizer;  // PSD variable on the first factor achieving value
    long iterations = 0;
    bool converged = false;
    BoundKind bound_kind = BoundKind::upper;
    double spread = 0.0;  // restart spread (or duality gap on the exact paths)
    double tol = 0.0;
    std::vector<double> history;  // best value per iteration when recorded
};

// ||m||_(p,q) for PSD m: infimum over PSD invertible A on the first factor of
// ||A||_{2r}^2 ||(A^-1 (x) I) m (A^-1 (x) I)||_q. Every iterate is a feasible
// point, so the returned value is always a true upper bound; small restart
// spread certifies near-exactness. p == q is evaluated exactly as ||m||_q and
// q = inf through an equivalent convex program solved to a certified gap.
PQResult pq_norm_inf_positive(const BipartiteOp& m, const PQQuery& query);

// ||m||_(q,p) for PSD m: supremum over PSD A with ||A||_{2r} <= 1 of
// ||(A (x) I) m (A (x) I)||_p. Multistart maximization; lower bound unless
// the restart spread certifies it.
PQResult pq_norm_sup_positive(const BipartiteOp& m, const PQQuery& query);

// Triangle-inequality upper bound for Hermitian m via the Jordan split
// m = m_+ - m_-; exact when one part vanishes.
PQResult pq_norm_hermitian_upper(const BipartiteOp& m, const PQQuery& query);

// ||m||_(1,alpha) with conditioning on the first factor. alpha == 1 returns
// the trace norm directly.
PQResult norm_1alpha(const BipartiteOp& m, const SchattenOrder& alpha,
                     PQQuery base = PQQuery{});

// (S (x) I) m (S (x) I) with S acting on the first factor.
CMat sandwich_first(const CMat& s, const BipartiteOp& m);

// Eigenvalues of a Hermitian matrix clamped to [0, inf); helper for norms of
// PSD sandwiches.
RVec psd_eigenvalues(const CMat& herm);

}  // namespace svv
