#include "svv/cli.hpp"

#include "svv/entropy.hpp"
#include "svv/linalg.hpp"
#include "svv/matio.hpp"
#include "svv/parallel.hpp"
#include "svv/pqnorm.hpp"
#include "svv/rng.hpp"
#include "svv/schatten.hpp"
#include "svv/specfact.hpp"
#include "svv/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace svv {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

const double kLn2 = std::log(2.0);

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

SchattenOrder parse_order(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return SchattenOrder::infinity();
    return SchattenOrder::finite(std::stod(s));
}

RenyiOrder parse_renyi(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return RenyiOrder::infinity();
    return RenyiOrder::finite(std::stod(s));
}

json pq_result_json(const PQResult& r) {
    json j;
    j["value"] = r.value;
    j["bound_kind"] = bound_kind_str(r.bound_kind);
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["spread"] = r.spread;
    j["tol"] = r.tol;
    j["optimizer"] = cmat_to_json(r.optimizer.mat());
    if (!r.history.empty()) j["history"] = r.history;
    return j;
}

void emit(const json& envelope, bool as_json) {
    if (as_json) {
        std::cout << envelope.dump(2) << "\n";
        return;
    }
    // plain table: one "key value" line per result entry
    for (const auto& res : envelope.at("results")) {
        for (auto it = res.begin(); it != res.end(); ++it) {
            if (it.value().is_number_float())
                std::cout << it.key() << "  " << fmt(it.value().get<double>()) << "\n";
            else if (it.value().is_primitive())
                std::cout << it.key() << "  " << it.value().dump() << "\n";
        }
    }
}

json make_envelope(const std::string& command, const json& config, const json& results) {
    json j;
    j["command"] = command;
    j["config"] = config;
    j["results"] = results;
    j["version"] = kVersion;
    return j;
}

// defaults < config file < environment < flags
ExperimentConfig merged_config(const CLI::App* sub, const std::string& config_path,
                               std::uint64_t flag_seed, int flag_trials, double flag_tol,
                               int flag_mc, int flag_restarts) {
    ExperimentConfig cfg;
    cfg.tol = 1e-6;
    cfg.trials = 10;
    if (!config_path.empty()) cfg = ExperimentConfig::from_json(load_json_file(config_path));
    if (const char* env = std::getenv("SVV_SEED")) cfg.seed = Seed(std::strtoull(env, nullptr, 10));
    if (sub->count("--seed")) cfg.seed = Seed(flag_seed);
    if (sub->count("--trials")) cfg.trials = flag_trials;
    if (sub->count("--tol")) cfg.tol = flag_tol;
    if (sub->count("--mc-samples")) cfg.mcSamples = flag_mc;
    if (sub->count("--restarts")) cfg.restarts = flag_restarts;
    cfg.threads = resolve_threads(0);
    return cfg;
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
    CLI::App app{"operator-valued Schatten norms, Renyi entropies and spectral factorization"};
    app.require_subcommand(1);
    bool as_json = false;
    bool bits = false;
    app.add_flag("--json", as_json, "machine-readable JSON envelope on stdout");
    app.add_flag("--bits", bits, "report entropies in bits instead of nats");

    // ---- norm ----
    auto* c_norm = app.add_subcommand("norm", "variational (p,q)-norm of a PSD bipartite operator");
    std::string norm_pq = "1,2", norm_form = "inf", norm_input;
    double norm_tol = 1e-7;
    int norm_restarts = 8, norm_maxiter = 2000;
    std::uint64_t norm_seed = 20240915ULL;
    c_norm->add_option("--pq", norm_pq, "exponents p,q (use inf for infinity)")->required();
    c_norm->add_option("--input", norm_input, "matrix JSON with dims")->required();
    c_norm->add_option("--form", norm_form, "inf | sup | herm (Jordan upper bound)");
    c_norm->add_option("--tol", norm_tol);
    c_norm->add_option("--restarts", norm_restarts);
    c_norm->add_option("--max-iter", norm_maxiter);
    c_norm->add_option("--seed", norm_seed);

    // ---- entropy ----
    auto* c_ent = app.add_subcommand("entropy", "conditional Renyi entropy H_alpha(X|Y), Y first");
    std::string ent_alpha = "2", ent_input;
    double ent_tol = 1e-7;
    int ent_restarts = 8;
    c_ent->add_option("--alpha", ent_alpha)->required();
    c_ent->add_option("--input", ent_input, "bipartite density JSON (dims = [dY, dX])")->required();
    c_ent->add_option("--tol", ent_tol);
    c_ent->add_option("--restarts", ent_restarts);

    // ---- divergence ----
    auto* c_div = app.add_subcommand("divergence", "sandwiched Renyi divergence D_alpha(rho||sigma)");
    std::string div_alpha = "2", div_rho, div_sigma;
    c_div->add_option("--alpha", div_alpha)->required();
    c_div->add_option("--rho", div_rho)->required();
    c_div->add_option("--sigma", div_sigma)->required();

    // ---- coherent ----
    auto* c_coh = app.add_subcommand("coherent", "alpha-Renyi coherent information of a channel");
    std::string coh_alpha = "2", coh_channel;
    int coh_restarts = 4;
    std::uint64_t coh_seed = 7711ULL;
    c_coh->add_option("--alpha", coh_alpha)->required();
    c_coh->add_option("--channel", coh_channel, "channel JSON (kraus list)")->required();
    c_coh->add_option("--restarts", coh_restarts);
    c_coh->add_option("--seed", coh_seed);

    // ---- verify ----
    auto* c_ver = app.add_subcommand("verify", "randomized property-testing suites");
    std::string ver_suite = "all", ver_out, ver_config;
    std::uint64_t ver_seed = 12345ULL;
    int ver_trials = 10, ver_mc = 500, ver_restarts = 6;
    double ver_tol = 1e-6;
    c_ver->add_option("--suite", ver_suite, "suite name or 'all'");
    c_ver->add_option("--seed", ver_seed);
    c_ver->add_option("--trials", ver_trials);
    c_ver->add_option("--tol", ver_tol);
    c_ver->add_option("--mc-samples", ver_mc);
    c_ver->add_option("--restarts", ver_restarts);
    c_ver->add_option("--out", ver_out, "write the CSV report here");
    c_ver->add_option("--config", ver_config, "JSON config file (defaults < file < env < flags)");

    // ---- decouple ----
    auto* c_dec = app.add_subcommand("decouple", "Monte-Carlo decoupling bound check");
    std::string dec_input, dec_alpha = "2";
    Eigen::Index dec_dx0 = 2;
    int dec_samples = 2000;
    std::uint64_t dec_seed = 99ULL;
    c_dec->add_option("--input", dec_input, "bipartite density JSON (dims = [dX, dY])")->required();
    c_dec->add_option("--dx0", dec_dx0, "projected dimension")->required();
    c_dec->add_option("--alpha", dec_alpha, "order in [1,2]");
    c_dec->add_option("--samples", dec_samples);
    c_dec->add_option("--seed", dec_seed);

    // ---- specfact ----
    auto* c_sf = app.add_subcommand("specfact", "Wiener-Masani spectral factorization");
    std::string sf_input, sf_out;
    double sf_tol = 1e-10;
    c_sf->add_option("--input", sf_input, "TrigMatPoly JSON")->required();
    c_sf->add_option("--tol", sf_tol);
    c_sf->add_option("--out", sf_out, "write the factor JSON here");

    // ---- interp ----
    auto* c_int = app.add_subcommand("interp", "Schatten interpolation inequality check");
    std::string int_input, int_p0 = "1", int_p1 = "inf";
    double int_theta = 0.5;
    c_int->add_option("--input", int_input)->required();
    c_int->add_option("--p0", int_p0);
    c_int->add_option("--p1", int_p1);
    c_int->add_option("--theta", int_theta);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const double unit = bits ? kLn2 : 1.0;

    try {
        if (*c_norm) {
            const auto comma = norm_pq.find(',');
            if (comma == std::string::npos) throw InvalidInput("--pq expects 'p,q'");
            PQQuery q;
            q.p = parse_order(norm_pq.substr(0, comma));
            q.q = parse_order(norm_pq.substr(comma + 1));
            q.tol = norm_tol;
            q.restarts = norm_restarts;
            q.maxIter = norm_maxiter;
            q.seed = Seed(norm_seed);
            q.threads = resolve_threads(0);
            const BipartiteOp m = bipartite_from_json(load_json_file(norm_input));
            PQResult r;
            if (norm_form == "inf") r = pq_norm_inf_positive(m, q);
            else if (norm_form == "sup") r = pq_norm_sup_positive(m, q);
            else if (norm_form == "herm") r = pq_norm_hermitian_upper(m, q);
            else throw InvalidInput("--form must be inf, sup or herm");
            json cfg{{"pq", norm_pq}, {"form", norm_form}, {"input", norm_input},
                     {"tol", norm_tol}, {"restarts", norm_restarts}, {"seed", norm_seed}};
            emit(make_envelope("norm", cfg, json::array({pq_result_json(r)})), as_json);
            return kExitOk;
        }

        if (*c_ent) {
            const RenyiOrder alpha = parse_renyi(ent_alpha);
            PQQuery q;
            q.tol = ent_tol;
            q.restarts = ent_restarts;
            q.threads = resolve_threads(0);
            const BipartiteOp rho = bipartite_from_json(load_json_file(ent_input));
            const EntropyResult r = cond_renyi_entropy(rho, alpha, q);
            json res;
            res["entropy"] = r.value / unit;
            res["unit"] = bits ? "bits" : "nats";
            res["norm_value"] = r.norm.value;
            res["bound_kind"] = bound_kind_str(r.norm.bound_kind);
            res["tol"] = r.norm.tol;
            json cfg{{"alpha", ent_alpha}, {"input", ent_input}, {"tol", ent_tol}};
            emit(make_envelope("entropy", cfg, json::array({res})), as_json);
            return kExitOk;
        }

        if (*c_div) {
            const RenyiOrder alpha = parse_renyi(div_alpha);
            const DensityMatrix rho(cmat_from_json(load_json_file(div_rho)));
            const HermMat sigma(cmat_from_json(load_json_file(div_sigma)));
            const double d = sandwiched_divergence(rho, sigma, alpha);
            json res;
            res["divergence"] = std::isinf(d) ? json("inf") : json(d / unit);
            res["unit"] = bits ? "bits" : "nats";
            res["bound_kind"] = "exact";  // closed-form eigendecomposition path
            json cfg{{"alpha", div_alpha}, {"rho", div_rho}, {"sigma", div_sigma}};
            emit(make_envelope("divergence", cfg, json::array({res})), as_json);
            return kExitOk;
        }

        if (*c_coh) {
            const RenyiOrder alpha = parse_renyi(coh_alpha);
            const Channel chan = channel_from_json(load_json_file(coh_channel));
            CoherentOptions opts;
            opts.restarts = coh_restarts;
            opts.seed = Seed(coh_seed);
            const CoherentResult r = coherent_info_alpha(chan, alpha, opts);
            json res;
            res["coherent_information"] = r.value / unit;
            res["unit"] = bits ? "bits" : "nats";
            res["bound_kind"] = r.certified ? "exact" : "lower";
            res["spread"] = r.spread;
            json cfg{{"alpha", coh_alpha}, {"channel", coh_channel},
                     {"restarts", coh_restarts}, {"seed", coh_seed}};
            emit(make_envelope("coherent", cfg, json::array({res})), as_json);
            return kExitOk;
        }

        if (*c_ver) {
            ExperimentConfig cfg = merged_config(c_ver, ver_config, ver_seed, ver_trials,
                                                 ver_tol, ver_mc, ver_restarts);
            const Report rep = run_suite(ver_suite, cfg);
            if (!ver_out.empty()) {
                std::ofstream out(ver_out);
                if (!out) throw InvalidInput("cannot write " + ver_out);
                out << rep.to_csv();
            }
            if (as_json) {
                emit(make_envelope("verify", cfg.to_json(),
                                   json::array({rep.to_json(cfg.to_json())})),
                     true);
            } else {
                std::cout << rep.to_csv();
                std::cout << (rep.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << " ("
                          << rep.rows.size() << " rows)\n";
            }
            return rep.all_pass() ? kExitOk : kExitCheckFail;
        }

        if (*c_dec) {
            const BipartiteOp rho = bipartite_from_json(load_json_file(dec_input));
            ExperimentConfig cfg;
            cfg.threads = resolve_threads(0);
            const Report rep = decoupling_mc(rho, dec_dx0, std::stod(dec_alpha),
                                             dec_samples, Seed(dec_seed), cfg);
            if (as_json) {
                emit(make_envelope("decouple",
                                   json{{"input", dec_input}, {"dx0", dec_dx0},
                                        {"alpha", dec_alpha}, {"samples", dec_samples},
                                        {"seed", dec_seed}},
                                   json::array({rep.to_json(json::object())})),
                     true);
            } else {
                std::cout << rep.to_csv();
            }
            return rep.all_pass() ? kExitOk : kExitCheckFail;
        }

        if (*c_sf) {
            const TrigMatPoly t = TrigMatPoly::from_json(load_json_file(sf_input));
            const FactorizeResult f = spectral_factorize(t, sf_tol);
            const OuternessCertificate cert = outerness_certificate(f.factor);
            if (!sf_out.empty()) save_json_file(sf_out, f.factor.to_json());
            json res;
            res["residual"] = f.residual;
            res["iterations"] = f.iterations;
            res["grid"] = f.grid;
            res["used_fallback"] = f.used_fallback;
            res["winding"] = cert.winding;
            res["minAbsDet"] = cert.minAbsDet;
            res["outer_ok"] = cert.ok;
            res["tol"] = sf_tol;
            json cfg{{"input", sf_input}, {"tol", sf_tol}};
            emit(make_envelope("specfact", cfg, json::array({res})), as_json);
            return cert.ok ? kExitOk : kExitCheckFail;
        }

        if (*c_int) {
            const CMat x = cmat_from_json(load_json_file(int_input));
            const SchattenOrder p0 = parse_order(int_p0), p1 = parse_order(int_p1);
            const double margin = schatten_interp_check(x, p0, p1, int_theta);
            json res;
            res["margin"] = margin;
            res["tol"] = 1e-9;
            res["pass"] = margin >= -1e-9;
            res["norm_p0"] = schatten_norm(x, p0);
            res["norm_p1"] = schatten_norm(x, p1);
            res["norm_interp"] = schatten_norm(x, interp_order(p0, p1, int_theta));
            json cfg{{"input", int_input}, {"p0", int_p0}, {"p1", int_p1}, {"theta", int_theta}};
            emit(make_envelope("interp", cfg, json::array({res})), as_json);
            return margin >= -1e-9 ? kExitOk : kExitCheckFail;
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace svv
