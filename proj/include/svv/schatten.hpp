#pragma once

#include "svv/linalg.hpp"

namespace svv {

// Exponent p in [1, inf]; infinity is a distinct state, never a large float.
class SchattenOrder {
public:
    SchattenOrder() : p_(2.0), inf_(false) {}
    static SchattenOrder finite(double p) {
        if (!(p >= 1.0)) throw InvalidInput("SchattenOrder: p must be >= 1");
        return SchattenOrder(p, false);
    }
    static SchattenOrder infinity() { return SchattenOrder(0.0, true); }

    bool is_inf() const { return inf_; }
    double value() const {
        if (inf_) throw InvalidInput("SchattenOrder: infinite order has no finite value");
        return p_;
    }
    // 1/p, with 1/inf = 0
    double reciprocal() const { return inf_ ? 0.0 : 1.0 / p_; }

    bool operator==(const SchattenOrder& o) const {
        return inf_ == o.inf_ && (inf_ || p_ == o.p_);
    }

    std::string str() const { return inf_ ? "inf" : std::to_string(p_); }

private:
    SchattenOrder(double p, bool inf) : p_(p), inf_(inf) {}
    double p_;
    bool inf_;
};

// Holder conjugate: 1/p + 1/p' = 1, with 1 <-> inf.
SchattenOrder conjugate_order(const SchattenOrder& p);

// (sum_i s_i^p)^{1/p} over singular values; p = inf gives max s_i.
double schatten_norm(const CMat& x, const SchattenOrder& p);

// Same norm from a precomputed vector of singular values or PSD eigenvalues.
double schatten_norm_from_values(const RVec& s, const SchattenOrder& p);

// Margin of ||x y||_r <= ||x||_p ||y||_q with 1/r = 1/p + 1/q (r clamped into
// [1, inf]). Returns RHS - LHS.
double holder_check(const CMat& x, const CMat& y, const SchattenOrder& p,
                    const SchattenOrder& q);

// Margin of ||x||_{p_theta} <= ||x||_{p0}^{1-theta} ||x||_{p1}^{theta} with
// 1/p_theta = (1-theta)/p0 + theta/p1. Returns RHS - LHS.
double schatten_interp_check(const CMat& x, const SchattenOrder& p0,
                             const SchattenOrder& p1, double theta);

// The interpolated exponent itself.
SchattenOrder interp_order(const SchattenOrder& p0, const SchattenOrder& p1, double theta);

}  // namespace svv
