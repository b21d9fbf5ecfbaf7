#include "svv/schatten.hpp"

#include <cmath>

namespace svv {

SchattenOrder conjugate_order(const SchattenOrder& p) {
    if (p.is_inf()) return SchattenOrder::finite(1.0);
    if (p.value() == 1.0) return SchattenOrder::infinity();
    return SchattenOrder::finite(p.value() / (p.value() - 1.0));
}

double schatten_norm_from_values(const RVec& s, const SchattenOrder& p) {
    if (s.size() == 0) return 0.0;
    const double smax = s.cwiseAbs().maxCoeff();
    if (smax == 0.0) return 0.0;
    if (p.is_inf()) return smax;
    const double pv = p.value();
    // scale by the largest value so s_i^p cannot overflow
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        const double r = std::abs(s[i]) / smax;
        if (r > 0) acc += std::pow(r, pv);
    }
    return smax * std::pow(acc, 1.0 / pv);
}

double schatten_norm(const CMat& x, const SchattenOrder& p) {
    return schatten_norm_from_values(singular_values(x), p);
}

double holder_check(const CMat& x, const CMat& y, const SchattenOrder& p,
                    const SchattenOrder& q) {
    if (x.cols() != y.rows()) throw InvalidInput("holder_check: shapes not conformable");
    const double inv_r = p.reciprocal() + q.reciprocal();
    const SchattenOrder r = (inv_r <= 0.0)  ? SchattenOrder::infinity()
                            : (inv_r >= 1.0) ? SchattenOrder::finite(1.0)
                                             : SchattenOrder::finite(1.0 / inv_r);
    const double lhs = schatten_norm(x * y, r);
    const double rhs = schatten_norm(x, p) * schatten_norm(y, q);
    return rhs - lhs;
}

SchattenOrder interp_order(const SchattenOrder& p0, const SchattenOrder& p1, double theta) {
    if (theta < 0.0 || theta > 1.0) throw InvalidInput("interp_order: theta not in [0,1]");
    const double inv = (1.0 - theta) * p0.reciprocal() + theta * p1.reciprocal();
    return inv == 0.0 ? SchattenOrder::infinity() : SchattenOrder::finite(1.0 / inv);
}

double schatten_interp_check(const CMat& x, const SchattenOrder& p0,
                             const SchattenOrder& p1, double theta) {
    const RVec s = singular_values(x);
    const double lhs = schatten_norm_from_values(s, interp_order(p0, p1, theta));
    const double rhs = std::pow(schatten_norm_from_values(s, p0), 1.0 - theta) *
                       std::pow(schatten_norm_from_values(s, p1), theta);
    return rhs - lhs;
}

}  // namespace svv
