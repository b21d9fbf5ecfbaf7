#include "svv/verify.hpp"

#include "svv/linalg.hpp"
#include "svv/parallel.hpp"
#include "svv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace svv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RenyiOrder order_of(double a) {
    return std::isinf(a) ? RenyiOrder::infinity() : RenyiOrder::finite(a);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double inv_conj(double alpha) {  // 1/alpha' = 1 - 1/alpha
    if (std::isinf(alpha)) return 1.0;
    return 1.0 - 1.0 / alpha;
}

std::string dims_tag(const std::array<Eigen::Index, 3>& d) {
    std::string s = "[" + std::to_string(d[0]) + "x" + std::to_string(d[1]);
    if (d[2] > 0) s += "x" + std::to_string(d[2]);
    return s + "]";
}

}  // namespace

PQQuery ExperimentConfig::make_query(std::uint64_t seed_value) const {
    PQQuery q;
    q.tol = tol;
    q.maxIter = maxIter;
    q.restarts = restarts;
    q.seed = Seed(seed_value);
    q.threads = 1;  // trials own the parallelism
    return q;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["seed"] = seed.master;
    j["trials"] = trials;
    nlohmann::json jd = nlohmann::json::array();
    for (const auto& d : dims) jd.push_back({d[0], d[1], d[2]});
    j["dims"] = std::move(jd);
    nlohmann::json ja = nlohmann::json::array();
    for (double a : alphas) {
        if (std::isinf(a))
            ja.push_back("inf");
        else
            ja.push_back(a);
    }
    j["alphas"] = std::move(ja);
    j["tol"] = tol;
    j["mcSamples"] = mcSamples;
    j["restarts"] = restarts;
    j["maxIter"] = maxIter;
    // the worker count is an execution knob, never part of the result record
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (j.contains("seed")) c.seed = Seed(j.at("seed").get<std::uint64_t>());
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("dims")) {
        c.dims.clear();
        for (const auto& d : j.at("dims")) {
            std::array<Eigen::Index, 3> a{2, 2, 0};
            for (std::size_t k = 0; k < d.size() && k < 3; ++k)
                a[k] = d.at(k).get<Eigen::Index>();
            c.dims.push_back(a);
        }
    }
    if (j.contains("alphas")) {
        c.alphas.clear();
        for (const auto& a : j.at("alphas")) {
            if (a.is_string())
                c.alphas.push_back(kInf);
            else
                c.alphas.push_back(a.get<double>());
        }
    }
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("mcSamples")) c.mcSamples = j.at("mcSamples").get<int>();
    if (j.contains("restarts")) c.restarts = j.at("restarts").get<int>();
    if (j.contains("maxIter")) c.maxIter = j.at("maxIter").get<int>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    return c;
}

ReportRow make_row(std::string check, std::uint64_t seed, double lhs, double rhs,
                   double tol) {
    ReportRow r;
    r.check = std::move(check);
    r.seed = seed;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.tol = tol;
    r.pass = r.margin >= -tol;
    return r;
}

void Report::append(const Report& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

bool Report::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

std::string Report::to_csv() const {
    std::ostringstream out;
    out << "check,seed,lhs,rhs,margin,pass\n";
    for (const ReportRow& r : rows) {
        out << r.check << ',' << r.seed << ',' << fmt_double(r.lhs) << ','
            << fmt_double(r.rhs) << ',' << fmt_double(r.margin) << ','
            << (r.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

nlohmann::json Report::to_json(const nlohmann::json& config) const {
    nlohmann::json j;
    j["config"] = config;
    nlohmann::json rows_j = nlohmann::json::array();
    for (const ReportRow& r : rows) {
        nlohmann::json rj;
        rj["check"] = r.check;
        rj["seed"] = r.seed;
        rj["lhs"] = r.lhs;
        rj["rhs"] = r.rhs;
        rj["margin"] = r.margin;
        rj["tol"] = std::isinf(r.tol) ? nlohmann::json("inf") : nlohmann::json(r.tol);
        rj["pass"] = r.pass;
        rows_j.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows_j);
    j["all_pass"] = all_pass();
    return j;
}

namespace {

// Per-trial rows computed into slot t, concatenated in trial order so the
// report is independent of scheduling.
template <typename Fn>
Report run_trials(const ExperimentConfig& cfg, const std::string& tag, int trials,
                  Fn per_trial, bool serial) {
    std::vector<std::vector<ReportRow>> buf(trials);
    auto body = [&](long t) {
        buf[t] = per_trial(cfg.seed.derive(tag, static_cast<std::uint64_t>(t)),
                           static_cast<int>(t));
    };
    if (serial)
        serial_for(trials, body);
    else
        parallel_for(trials, body, cfg.threads);
    Report rep;
    for (auto& v : buf)
        for (auto& r : v) rep.rows.push_back(std::move(r));
    return rep;
}

BipartiteOp random_bipartite_density(Eigen::Index dA, Eigen::Index dB,
                                     std::uint64_t seed) {
    const DensityMatrix rho = random_density(dA * dB, dA * dB, seed);
    return BipartiteOp(rho.mat(), dA, dB);
}

EntropyResult h_alpha(const ExperimentConfig& cfg, const BipartiteOp& rho_yx,
                      double alpha, std::uint64_t seed) {
    PQQuery q = cfg.make_query(seed);
    // the -alpha' log map amplifies value error by alpha'; tighten accordingly
    const double ap = std::isinf(alpha) ? 1.0 : (alpha > 1.0 ? alpha / (alpha - 1.0) : 1.0);
    q.tol = cfg.tol / std::clamp(ap, 1.0, 100.0);
    return cond_renyi_entropy(rho_yx, order_of(alpha), q);
}

bool serial_mode = false;  // flipped only by run_suite_serial (single-threaded use)

}  // namespace

Report check_poisson_integrals(const ExperimentConfig& cfg) {
    (void)cfg;
    Report rep;
    for (int b = 0; b <= 1; ++b) {
        for (int k = 1; k <= 9; ++k) {
            const double x = 0.1 * k;
            const StripPoint z{x, 0.25};  // off-axis point exercises the y shift
            const double integral =
                strip_quadrature([](double) { return 1.0; }, b, z, 1e-10);
            const double expected = (b == 0) ? 1.0 - x : x;
            rep.rows.push_back(make_row("poisson-integral-b" + std::to_string(b),
                                        cfg.seed.master, std::abs(integral - expected),
                                        1e-8, 0.0));
        }
    }
    return rep;
}

Report check_subharmonicity(const ExperimentConfig& cfg, int poly_degree,
                            Eigen::Index mat_dim, double p0, double p1, double theta) {
    const SchattenOrder o0 = SchattenOrder::finite(p0);
    const SchattenOrder o1 = SchattenOrder::finite(p1);
    const SchattenOrder ot = interp_order(o0, o1, theta);
    return run_trials(
        cfg, "subharmonicity", cfg.trials,
        [&](std::uint64_t inst, int) {
            Rng rng(inst);
            std::vector<CMat> coeff;
            for (int k = 0; k <= poly_degree; ++k)
                coeff.push_back(CMat(rng.ginibre(mat_dim, mat_dim) / std::sqrt(double(mat_dim))));
            auto eval_poly = [&](Complex z) {
                CMat acc = coeff[poly_degree];
                for (int k = poly_degree - 1; k >= 0; --k) acc = (acc * z + coeff[k]).eval();
                return acc;
            };
            const double lhs = std::log(schatten_norm(eval_poly(Complex(theta, 0.0)), ot));
            const StripPoint z{theta, 0.0};
            double rhs = 0.0;
            rhs += strip_quadrature(
                [&](double s) {
                    return std::log(schatten_norm(eval_poly(Complex(0.0, s)), o0));
                },
                0, z, 1e-9);
            rhs += strip_quadrature(
                [&](double s) {
                    return std::log(schatten_norm(eval_poly(Complex(1.0, s)), o1));
                },
                1, z, 1e-9);
            return std::vector<ReportRow>{make_row("subharmonicity", inst, lhs, rhs, 1e-6)};
        },
        serial_mode);
}

Report check_chain_rule(const ExperimentConfig& cfg,
                        const std::vector<std::pair<double, double>>& beta_gamma) {
    Report rep;
    for (const auto& d : cfg.dims) {
        if (d[2] <= 0) continue;
        const Eigen::Index dY = d[0], dX = d[1], dZ = d[2];
        const std::string tag = "chain-rule" + dims_tag(d);
        rep.append(run_trials(
            cfg, tag, cfg.trials,
            [&](std::uint64_t inst, int) {
                std::vector<ReportRow> rows;
                const Eigen::Index D = dX * dY * dZ;
                const DensityMatrix rho = random_multipartite_density({D}, D, inst);
                const std::vector<Eigen::Index> ds = {dX, dY, dZ};
                for (std::size_t i = 0; i < beta_gamma.size(); ++i) {
                    const double beta = beta_gamma[i].first;
                    const double gamma = beta_gamma[i].second;
                    const double bp = beta / (beta - 1.0), gp = gamma / (gamma - 1.0);
                    const double ap = bp + gp;
                    const double alpha = ap / (ap - 1.0);

                    const CMat m_zxy = permute_systems(rho.mat(), ds, {2, 0, 1});
                    const double h_xy_z =
                        h_alpha(cfg, BipartiteOp(m_zxy, dZ, dX * dY), alpha, inst).value;

                    const CMat m_yzx = permute_systems(rho.mat(), ds, {1, 2, 0});
                    const double h_x_yz =
                        h_alpha(cfg, BipartiteOp(m_yzx, dY * dZ, dX), beta, inst).value;

                    const CMat m_yz = partial_trace_multi(rho.mat(), ds, {0});
                    const BipartiteOp rho_zy =
                        swap_factors(BipartiteOp(m_yz, dY, dZ));
                    const double h_y_z = h_alpha(cfg, rho_zy, gamma, inst).value;

                    rows.push_back(make_row(
                        tag + "(b=" + fmt_double(beta) + ",g=" + fmt_double(gamma) + ")",
                        inst, h_x_yz + h_y_z, h_xy_z, 10 * cfg.tol));
                }
                return rows;
            },
            serial_mode));
    }
    return rep;
}

Report check_continuity(const ExperimentConfig& cfg,
                        const std::vector<double>& eps_targets) {
    Report rep;
    for (const auto& d : cfg.dims) {
        if (d[2] > 0) continue;
        const Eigen::Index dY = d[0], dX = d[1];
        const std::string tag = "continuity" + dims_tag(d);
        rep.append(run_trials(
            cfg, tag, cfg.trials,
            [&](std::uint64_t inst, int) {
                std::vector<ReportRow> rows;
                Rng rng(inst);
                const BipartiteOp rho = random_bipartite_density(dY, dX, rng.next_u64());
                const DensityMatrix tau = random_density(dY * dX, dY * dX, rng.next_u64());
                for (double alpha : cfg.alphas) {
                    if (!std::isinf(alpha) && alpha <= 1.0) continue;
                    const double hr = h_alpha(cfg, rho, alpha, inst).value;
                    for (double eps_t : eps_targets) {
                        const double t = std::min(1.0, 2.0 * eps_t);
                        const CMat smat = (1.0 - t) * rho.mat() + t * tau.mat();
                        const BipartiteOp sigma(smat, dY, dX);
                        // the premise must hold exactly: use the measured distance
                        const double eps = trace_distance(DensityMatrix(rho.mat()),
                                                          DensityMatrix(smat));
                        const double hs = h_alpha(cfg, sigma, alpha, inst).value;
                        const double bound = continuity_bound(eps, dX, order_of(alpha));
                        rows.push_back(make_row(
                            tag + "(a=" + fmt_double(alpha) + ",e=" + fmt_double(eps_t) + ")",
                            inst, std::abs(hr - hs), bound, 10 * cfg.tol));
                    }
                    // eps = 0: a fresh evaluation of the same input must agree
                    const double h2 = h_alpha(cfg, rho, alpha, inst).value;
                    rows.push_back(make_row(tag + "(a=" + fmt_double(alpha) + ",e=0)",
                                            inst, std::abs(hr - h2), 1e-5, 0.0));
                }
                return rows;
            },
            serial_mode));
    }
    return rep;
}

Report check_data_processing(const ExperimentConfig& cfg) {
    Report rep;
    for (const auto& d : cfg.dims) {
        if (d[2] > 0) continue;
        const Eigen::Index dY = d[0], dX = d[1];
        const std::string tag = "data-processing" + dims_tag(d);
        rep.append(run_trials(
            cfg, tag, cfg.trials,
            [&](std::uint64_t inst, int) {
                std::vector<ReportRow> rows;
                Rng rng(inst);
                const BipartiteOp rho = random_bipartite_density(dY, dX, rng.next_u64());
                const Channel chan = random_channel(dY, dY, 2, rng.next_u64());
                const BipartiteOp rho2 = chan.apply_first(rho);
                for (double alpha : cfg.alphas) {
                    const double before = h_alpha(cfg, rho, alpha, inst).value;
                    const double after = h_alpha(cfg, rho2, alpha, inst).value;
                    rows.push_back(make_row(tag + "(a=" + fmt_double(alpha) + ")",
                                            inst, before, after, 5 * cfg.tol));
                }
                // trace-norm case of the W correlation measure: exact values,
                // strict contraction
                {
                    const RenyiOrder one = RenyiOrder::finite(1.0);
                    const double wb = w_alpha(rho, one, cfg.make_query(inst)).value;
                    const double wa = w_alpha(rho2, one, cfg.make_query(inst)).value;
                    rows.push_back(make_row("w-" + tag + "(a=1)", inst, wa, wb,
                                            5 * cfg.tol));
                }
                return rows;
            },
            serial_mode));
    }
    return rep;
}

Report check_monotone_alpha(const ExperimentConfig& cfg) {
    std::vector<double> alphas = cfg.alphas;
    std::sort(alphas.begin(), alphas.end());
    Report rep;
    for (const auto& d : cfg.dims) {
        if (d[2] > 0) continue;
        const Eigen::Index dY = d[0], dX = d[1];
        const std::string tag = "monotone-alpha" + dims_tag(d);
        rep.append(run_trials(
            cfg, tag, cfg.trials,
            [&](std::uint64_t inst, int) {
                std::vector<ReportRow> rows;
                const BipartiteOp rho = random_bipartite_density(dY, dX, inst);
                std::vector<double> hs;
                for (double alpha : alphas)
                    hs.push_back(h_alpha(cfg, rho, alpha, inst).value);
                for (std::size_t k = 0; k + 1 < alphas.size(); ++k)
                    rows.push_back(make_row(tag + "(" + fmt_double(alphas[k]) + "<=" +
                                                fmt_double(alphas[k + 1]) + ")",
                                            inst, hs[k + 1], hs[k], 5 * cfg.tol));
                return rows;
            },
            serial_mode));
    }
    return rep;
}

Report check_dim_bounds(const ExperimentConfig& cfg) {
    Report rep;
    for (const auto& d : cfg.dims) {
        if (d[2] > 0) continue;
        const Eigen::Index dY = d[0], dX = d[1];
        const std::string tag = "dim-bounds" + dims_tag(d);
        rep.append(run_trials(
            cfg, tag, cfg.trials,
            [&](std::uint64_t inst, int) {
                std::vector<ReportRow> rows;
                const BipartiteOp rho = random_bipartite_density(dY, dX, inst);
                for (double alpha : cfg.alphas) {
                    const double h = h_alpha(cfg, rho, alpha, inst).value;
                    rows.push_back(make_row(tag + "(a=" + fmt_double(alpha) + ")", inst,
                                            std::abs(h), std::log(double(dX)), 5 * cfg.tol));
                }
                return rows;
            },
            serial_mode));
    }
    return rep;
}

Report check_alpha_limit(const ExperimentConfig& cfg) {
    const std::vector<double> hsteps = {1e-1, 1e-2, 1e-3};
    Report rep;
    for (const auto& d : cfg.dims) {
        if (d[2] > 0) continue;
        const Eigen::Index dY = d[0], dX = d[1];
        const std::string tag = "alpha-limit" + dims_tag(d);
        rep.append(run_trials(
            cfg, tag, cfg.trials,
            [&](std::uint64_t inst, int) {
                std::vector<ReportRow> rows;
                const BipartiteOp rho = random_bipartite_density(dY, dX, inst);
                const double h1 = cond_vn_entropy(rho);
                std::vector<double> dev;
                for (double h : hsteps)
                    dev.push_back(std::abs(h_alpha(cfg, rho, 1.0 + h, inst).value - h1));
                rows.push_back(
                    make_row(tag + "(dec 1e-1->1e-2)", inst, dev[1], dev[0], 10 * cfg.tol));
                rows.push_back(
                    make_row(tag + "(dec 1e-2->1e-3)", inst, dev[2], dev[1], 10 * cfg.tol));
                rows.push_back(make_row(tag + "(h=1e-3)", inst, dev[2], 5e-3, 0.0));
                return rows;
            },
            serial_mode));
    }
    return rep;
}

Report check_w_relation(const ExperimentConfig& cfg) {
    Report rep;
    for (const auto& d : cfg.dims) {
        if (d[2] > 0) continue;
        const Eigen::Index dY = d[0], dX = d[1];
        const std::string tag = "w-relation" + dims_tag(d);
        rep.append(run_trials(
            cfg, tag, cfg.trials,
            [&](std::uint64_t inst, int) {
                std::vector<ReportRow> rows;
                const BipartiteOp rho = random_bipartite_density(dY, dX, inst);
                for (double alpha : cfg.alphas) {
                    const double h = h_alpha(cfg, rho, alpha, inst).value;
                    const double w =
                        w_alpha(rho, order_of(alpha), cfg.make_query(inst)).value;
                    const double ic = inv_conj(alpha);
                    const double eh = std::exp(-ic * h);
                    const double dpow = std::pow(double(dX), -ic);
                    // W is an upper bound, so only W >= e^{-H/a'} - d^{-1/a'}
                    // is strictly checkable; the other branch is logged
                    rows.push_back(make_row(tag + "-lower(a=" + fmt_double(alpha) + ")",
                                            inst, eh - dpow, w, 10 * cfg.tol));
                    const bool exact_w = !std::isinf(alpha) && alpha == 1.0;
                    rows.push_back(make_row(
                        exact_w ? tag + "-upper(a=1)"
                                : tag + "-upper-logged(a=" + fmt_double(alpha) + ")",
                        inst, w, eh + dpow, exact_w ? 10 * cfg.tol : kInf));
                }
                return rows;
            },
            serial_mode));
    }
    return rep;
}

Report check_duality_crosscheck(const ExperimentConfig& cfg) {
    return run_trials(
        cfg, "duality", cfg.trials,
        [&](std::uint64_t inst, int) {
            std::vector<ReportRow> rows;
            Rng rng(inst);
            const BipartiteOp m = random_bipartite_density(2, 2, rng.next_u64());
            for (double alpha : cfg.alphas) {
                if (std::isinf(alpha)) continue;
                PQQuery q = cfg.make_query(inst);
                const double primal =
                    norm_1alpha(m, order_of(alpha).as_schatten(), q).value;
                const double ap_inv = inv_conj(alpha);
                const bool witness_exact = alpha == 1.0;  // (inf,inf) norm = operator norm
                const int n_witness = witness_exact ? 50 : 4;
                double best = 0.0;
                for (int wi = -1; wi < n_witness; ++wi) {
                    const CMat y = (wi < 0) ? m.mat()
                                            : CMat(random_density(4, 4, rng.next_u64()).mat());
                    const double pairing = std::real((y.adjoint() * m.mat()).trace());
                    double ynorm;
                    if (witness_exact) {
                        ynorm = schatten_norm(y, SchattenOrder::infinity());
                    } else {
                        PQQuery qs = q;
                        qs.p = SchattenOrder::finite(1.0 / ap_inv);  // alpha'
                        qs.q = SchattenOrder::infinity();
                        qs.restarts = 4;
                        ynorm = pq_norm_sup_positive(BipartiteOp(y, 2, 2), qs).value;
                    }
                    best = std::max(best, pairing / ynorm);
                }
                rows.push_back(make_row("duality(a=" + fmt_double(alpha) + ")", inst, best,
                                        primal, 10 * cfg.tol));
            }
            return rows;
        },
        serial_mode);
}

Report decoupling_mc(const BipartiteOp& rho_xy, Eigen::Index d_x0, double alpha,
                     int mc_samples, Seed seed, const ExperimentConfig& cfg) {
    if (alpha < 1.0 || alpha > 2.0)
        throw InvalidInput("decoupling_mc: alpha must lie in [1,2]");
    const Eigen::Index dX = rho_xy.dimA(), dY = rho_xy.dimB();
    if (d_x0 < 1 || d_x0 > dX) throw InvalidInput("decoupling_mc: need 1 <= d_x0 <= d_X");

    const CMat rho_y = partial_trace(rho_xy, Factor::First);
    const CMat target = kron(CMat(identity(d_x0) / double(d_x0)), rho_y);
    const CMat idY = identity(dY);

    PQQuery wq = cfg.make_query(seed.derive("decouple-w", 0));
    wq.restarts = std::min(wq.restarts, 4);
    const double w = w_alpha(swap_factors(rho_xy), order_of(alpha), wq).value;
    const double rhs =
        std::pow(2.0, 2.0 / alpha - 1.0) * std::pow(double(d_x0), inv_conj(alpha)) * w;

    std::vector<double> vals(mc_samples);
    parallel_for(
        mc_samples,
        [&](long j) {
            const CMat u = haar_unitary(dX, seed.derive("decouple-u", j));
            const CMat pu = u.topRows(d_x0);
            const CMat k = kron(pu, idY);
            const CMat proj = k * rho_xy.mat() * k.adjoint();
            const CMat diff = (double(dX) / double(d_x0)) * proj - target;
            vals[j] = eigh(HermMat::symmetrized(diff)).eigenvalues.cwiseAbs().sum();
        },
        cfg.threads);

    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= double(mc_samples);
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= std::max(1, mc_samples - 1);
    const double stderr_mean = std::sqrt(var / double(mc_samples));

    Report rep;
    rep.rows.push_back(make_row("decoupling(a=" + fmt_double(alpha) + ",d0=" +
                                    std::to_string(d_x0) + ")",
                                seed.master, mean + 3.0 * stderr_mean, rhs,
                                1e-12 * std::max(1.0, rhs)));
    return rep;
}

Report check_decoupling(const ExperimentConfig& cfg) {
    Report rep;
    for (const auto& d : cfg.dims) {
        if (d[2] > 0) continue;
        const Eigen::Index dY = d[0], dX = d[1];
        if (dX < 2) continue;
        const std::string tag = "decoupling" + dims_tag(d);
        for (int t = 0; t < cfg.trials; ++t) {
            const std::uint64_t inst = cfg.seed.derive(tag, t);
            const BipartiteOp rho_xy = random_bipartite_density(dX, dY, inst);
            for (double alpha : cfg.alphas) {
                if (std::isinf(alpha) || alpha > 2.0) continue;
                Report one = decoupling_mc(rho_xy, dX / 2, alpha, cfg.mcSamples,
                                           Seed(inst), cfg);
                for (auto& r : one.rows) {
                    r.seed = inst;
                    r.check = tag + r.check.substr(std::string("decoupling").size());
                }
                rep.append(one);
            }
        }
    }
    return rep;
}

std::vector<std::string> suite_names() {
    return {"poisson",        "subharmonicity", "chain-rule", "continuity",
            "data-processing", "monotone-alpha", "dim-bounds", "alpha-limit",
            "w-relation",     "duality",        "decoupling"};
}

Report run_suite(const std::string& name, const ExperimentConfig& cfg) {
    Report rep;
    auto run_one = [&](const std::string& n) {
        if (n == "poisson") rep.append(check_poisson_integrals(cfg));
        else if (n == "subharmonicity") rep.append(check_subharmonicity(cfg));
        else if (n == "chain-rule") rep.append(check_chain_rule(cfg));
        else if (n == "continuity") rep.append(check_continuity(cfg));
        else if (n == "data-processing") rep.append(check_data_processing(cfg));
        else if (n == "monotone-alpha") rep.append(check_monotone_alpha(cfg));
        else if (n == "dim-bounds") rep.append(check_dim_bounds(cfg));
        else if (n == "alpha-limit") rep.append(check_alpha_limit(cfg));
        else if (n == "w-relation") rep.append(check_w_relation(cfg));
        else if (n == "duality") rep.append(check_duality_crosscheck(cfg));
        else if (n == "decoupling") rep.append(check_decoupling(cfg));
        else throw InvalidInput("unknown suite: " + n);
    };
    if (name == "all") {
        for (const auto& n : suite_names()) run_one(n);
    } else {
        run_one(name);
    }
    return rep;
}

Report run_suite_serial(const std::string& name, const ExperimentConfig& cfg) {
    serial_mode = true;
    Report rep;
    try {
        ExperimentConfig c = cfg;
        c.threads = 1;
        rep = run_suite(name, c);
    } catch (...) {
        serial_mode = false;
        throw;
    }
    serial_mode = false;
    return rep;
}

}  // namespace svv
