#pragma once

#include "svv/entropy.hpp"
#include "svv/strip.hpp"

#include <json.hpp>

#include <array>

namespace svv {

struct ExperimentConfig {
    Seed seed{12345ULL};
    int trials = 20;
    // each entry (d_Y, d_X, d_Z); d_Z = 0 marks a bipartite instance
    std::vector<std::array<Eigen::Index, 3>> dims = {{2, 2, 0}, {2, 3, 0}, {2, 2, 2}};
    std::vector<double> alphas = {1.0, 1.5, 2.0, 3.0};  // INFINITY encodes alpha = inf
    double tol = 1e-7;
    int mcSamples = 500;
    int restarts = 6;
    int maxIter = 2000;
    int threads = 0;  // 0: resolve from SVV_THREADS / OpenMP default

    PQQuery make_query(std::uint64_t seed_value) const;
    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

struct ReportRow {
    std::string check;
    std::uint64_t seed = 0;  // instance seed
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // always rhs - lhs
    double tol = 0.0;     // pass <=> margin >= -tol
    bool pass = true;
};

ReportRow make_row(std::string check, std::uint64_t seed, double lhs, double rhs,
                   double tol);

struct Report {
    std::vector<ReportRow> rows;
    void append(const Report& other);
    bool all_pass() const;
    // check,seed,lhs,rhs,margin,pass
    std::string to_csv() const;
    nlohmann::json to_json(const nlohmann::json& config) const;
};

// ---- inequality checks ----------------------------------------------------

// Poisson-kernel reproducing integrals: int P_0 ds = 1-x and int P_1 ds = x.
Report check_poisson_integrals(const ExperimentConfig& cfg);

// Boundary-to-interior subharmonicity of log ||f(z)||_{p_b} for random matrix
// polynomials on the strip, evaluated with the kernel quadrature.
Report check_subharmonicity(const ExperimentConfig& cfg, int poly_degree = 3,
                            Eigen::Index mat_dim = 4, double p0 = 2.0, double p1 = 4.0,
                            double theta = 0.5);

// H_alpha(XY|Z) >= H_beta(X|YZ) + H_gamma(Y|Z) with alpha' = beta' + gamma'.
Report check_chain_rule(const ExperimentConfig& cfg,
                        const std::vector<std::pair<double, double>>& beta_gamma = {
                            {2.0, 2.0}, {3.0, 1.5}, {1.5, 3.0}});

// |H_alpha(rho) - H_alpha(sigma)| against the closed-form continuity bound at
// the measured trace distance.
Report check_continuity(const ExperimentConfig& cfg,
                        const std::vector<double>& eps_targets = {0.02, 0.05, 0.1});

Report check_data_processing(const ExperimentConfig& cfg);
Report check_monotone_alpha(const ExperimentConfig& cfg);
Report check_dim_bounds(const ExperimentConfig& cfg);
Report check_alpha_limit(const ExperimentConfig& cfg);

// One-sided test of |W_alpha - e^{-H_alpha/alpha'}| <= d_X^{-1/alpha'}; the
// branch that survives the upper-bound character of W is asserted, the other
// is logged with infinite tolerance.
Report check_w_relation(const ExperimentConfig& cfg);

// Sampled-witness duality: tr(y m) / ||y||_(inf,alpha') <= ||m||_(1,alpha).
Report check_duality_crosscheck(const ExperimentConfig& cfg);

// Monte-Carlo decoupling: rho ordered (X first, Y second), projection onto the
// first d_x0 basis vectors of X. Mean over Haar U of
//   || (d_X/d_X0) (P U (x) I) rho (U* P (x) I) - I/d_X0 (x) rho_Y ||_1
// plus 3 standard errors must stay below 2^{2/alpha-1} d_X0^{1/alpha'} W_alpha.
Report decoupling_mc(const BipartiteOp& rho_xy, Eigen::Index d_x0, double alpha,
                     int mc_samples, Seed seed, const ExperimentConfig& cfg);

// Decoupling over random states per the config dims.
Report check_decoupling(const ExperimentConfig& cfg);

// Whole suite by name; "all" runs everything.
Report run_suite(const std::string& name, const ExperimentConfig& cfg);
std::vector<std::string> suite_names();

// Serial twin of the trial loop used by the checks; compared bitwise against
// the OpenMP path in tests.
Report run_suite_serial(const std::string& name, const ExperimentConfig& cfg);

}  // namespace svv
