#pragma once

#include "svv/pqnorm.hpp"

namespace svv {

// Renyi order alpha >= 1 with an explicit infinity state; alpha' = alpha/(alpha-1)
// is the Holder conjugate, with alpha = 1 -> alpha' = inf and alpha = inf -> 1.
class RenyiOrder {
public:
    static RenyiOrder finite(double a) {
        if (!(a >= 1.0)) throw InvalidInput("RenyiOrder: alpha must be >= 1");
        return RenyiOrder(a, false);
    }
    static RenyiOrder infinity() { return RenyiOrder(0.0, true); }

    bool is_inf() const { return inf_; }
    bool is_one() const { return !inf_ && a_ == 1.0; }
    double value() const {
        if (inf_) throw InvalidInput("RenyiOrder: infinite order has no finite value");
        return a_;
    }
    // alpha' as a double; +inf when alpha = 1
    double conjugate() const {
        if (inf_) return 1.0;
        if (a_ == 1.0) return std::numeric_limits<double>::infinity();
        return a_ / (a_ - 1.0);
    }
    SchattenOrder as_schatten() const {
        return inf_ ? SchattenOrder::infinity() : SchattenOrder::finite(a_);
    }
    std::string str() const { return inf_ ? "inf" : std::to_string(a_); }

private:
    RenyiOrder(double a, bool inf) : a_(a), inf_(inf) {}
    double a_;
    bool inf_;
};

// Sandwiched Renyi divergence
//   D_alpha(rho||sigma) = alpha' log || sigma^{-1/(2 alpha')} rho sigma^{-1/(2 alpha')} ||_alpha,
// returning +inf when supp(rho) is not contained in supp(sigma); alpha = 1
// gives the Umegaki divergence tr rho (log rho - log sigma).
double sandwiched_divergence(const DensityMatrix& rho, const HermMat& sigma,
                             const RenyiOrder& alpha);

// Entropy value together with the norm evaluation that produced it.
struct EntropyResult {
    double value = 0.0;
    PQResult norm;
};

// H_alpha(X|Y) = -alpha' log ||rho_YX||_(1,alpha); rho has the conditioning
// factor Y first and X second. alpha = 1 falls back to the von Neumann
// conditional entropy. Natural log; values in nats.
EntropyResult cond_renyi_entropy(const BipartiteOp& rho_yx, const RenyiOrder& alpha,
                                 PQQuery base = PQQuery{});

// H(X|Y) = H(XY) - H(Y), von Neumann, with rho ordered (Y first, X second).
double cond_vn_entropy(const BipartiteOp& rho_yx);

// W_alpha(X|Y) = || rho_YX - rho_Y (x) I_X/d_X ||_(1,alpha), computed through
// the Jordan-split upper bound (exact when the difference vanishes or is
// one-signed, and always exact at alpha = 1).
EntropyResult w_alpha(const BipartiteOp& rho_yx, const RenyiOrder& alpha,
                      PQQuery base = PQQuery{});

struct CoherentOptions {
    int restarts = 4;
    int maxIter = 200;
    double tol = 1e-6;
    Seed seed{7711ULL};
    PQQuery inner = PQQuery{};
};

struct CoherentResult {
    double value = 0.0;   // alpha' log max ||(Phi (x) I)(psi)||_(1,alpha)
    double spread = 0.0;  // multistart spread on the inner norm value
    bool certified = false;
    CVec best_input;  // optimizing pure input on X (x) R
};

// alpha-Renyi coherent information of a channel, maximized over pure inputs
// with reference dimension d_R = dimIn.
CoherentResult coherent_info_alpha(const Channel& phi, const RenyiOrder& alpha,
                                   CoherentOptions opts = CoherentOptions{});

// alpha' log(1 + 2 eps d_X^{2/alpha'}); the uniform continuity bound on
// H_alpha(X|Y) for states eps-close in trace distance.
double continuity_bound(double eps, Eigen::Index d_x, const RenyiOrder& alpha);

}  // namespace svv
