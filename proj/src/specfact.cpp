#include "svv/specfact.hpp"

#include "svv/linalg.hpp"
#include "svv/matio.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

namespace svv {

void fft_inplace(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw InvalidInput("fft_inplace: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / double(len) * (inverse ? 1.0 : -1.0);
        const Complex wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

// ---- TrigMatPoly ------------------------------------------------------------

TrigMatPoly::TrigMatPoly(Eigen::Index d, int N) : d_(d), N_(N) {
    if (d < 1 || N < 0) throw InvalidInput("TrigMatPoly: bad dimensions");
    coeffs_.assign(2 * N + 1, CMat::Zero(d, d));
}

void TrigMatPoly::hermitian_symmetrize() {
    for (int n = 0; n <= N_; ++n) {
        const CMat avg = 0.5 * (coeff(n) + CMat(coeff(-n).adjoint()));
        coeff(n) = avg;
        coeff(-n) = avg.adjoint();
    }
}

HermMat TrigMatPoly::eval(double t) const {
    CMat acc = CMat::Zero(d_, d_);
    for (int n = -N_; n <= N_; ++n)
        acc += coeff(n) * std::polar(1.0, n * t);
    return HermMat::symmetrized(acc);
}

double TrigMatPoly::min_eig_on_grid(int grid) const {
    double mn = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid; ++j) {
        const double t = 2.0 * M_PI * j / grid;
        mn = std::min(mn, eigh(eval(t)).eigenvalues.minCoeff());
    }
    return mn;
}

double TrigMatPoly::max_norm_on_grid(int grid) const {
    double mx = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double t = 2.0 * M_PI * j / grid;
        mx = std::max(mx, eval(t).mat().norm());
    }
    return mx;
}

TrigMatPoly TrigMatPoly::from_analytic_square(const std::vector<CMat>& b, double ridge) {
    if (b.empty()) throw InvalidInput("from_analytic_square: empty coefficient list");
    const Eigen::Index d = b[0].rows();
    const int K = static_cast<int>(b.size()) - 1;
    TrigMatPoly out(d, K);
    // C_n = sum_k B_k^dag B_{k+n}
    for (int n = 0; n <= K; ++n) {
        CMat c = CMat::Zero(d, d);
        for (int k = 0; k + n <= K; ++k) c += b[k].adjoint() * b[k + n];
        out.coeff(n) = c;
        out.coeff(-n) = c.adjoint();
    }
    out.coeff(0) += ridge * identity(d);
    out.hermitian_symmetrize();
    return out;
}

nlohmann::json TrigMatPoly::to_json() const {
    nlohmann::json j;
    j["d"] = d_;
    j["N"] = N_;
    nlohmann::json cj;
    for (int n = -N_; n <= N_; ++n) cj[std::to_string(n)] = cmat_to_json(coeff(n));
    j["coeffs"] = std::move(cj);
    return j;
}

TrigMatPoly TrigMatPoly::from_json(const nlohmann::json& j) {
    TrigMatPoly out(j.at("d").get<Eigen::Index>(), j.at("N").get<int>());
    for (int n = -out.N_; n <= out.N_; ++n) {
        const std::string key = std::to_string(n);
        if (j.at("coeffs").contains(key))
            out.coeff(n) = cmat_from_json(j.at("coeffs").at(key));
    }
    out.hermitian_symmetrize();
    return out;
}

// ---- AnalyticMatPoly --------------------------------------------------------

AnalyticMatPoly::AnalyticMatPoly(Eigen::Index d, int K) : d_(d), K_(K) {
    if (d < 1 || K < 0) throw InvalidInput("AnalyticMatPoly: bad dimensions");
    coeffs_.assign(K + 1, CMat::Zero(d, d));
}

CMat AnalyticMatPoly::eval(Complex z) const {
    CMat acc = coeffs_[K_];
    for (int k = K_ - 1; k >= 0; --k) acc = (acc * z + coeffs_[k]).eval();
    return acc;
}

CMat AnalyticMatPoly::eval_circle(double t) const { return eval(std::polar(1.0, t)); }

nlohmann::json AnalyticMatPoly::to_json() const {
    nlohmann::json j;
    j["d"] = d_;
    j["K"] = K_;
    nlohmann::json cj = nlohmann::json::array();
    for (const CMat& c : coeffs_) cj.push_back(cmat_to_json(c));
    j["coeffs"] = std::move(cj);
    return j;
}

AnalyticMatPoly AnalyticMatPoly::from_json(const nlohmann::json& j) {
    AnalyticMatPoly out(j.at("d").get<Eigen::Index>(), j.at("K").get<int>());
    const auto& cj = j.at("coeffs");
    for (int k = 0; k <= out.K_ && k < static_cast<int>(cj.size()); ++k)
        out.coeff(k) = cmat_from_json(cj.at(k));
    return out;
}

// ---- factorization ----------------------------------------------------------

namespace {

std::vector<CMat> eval_on_grid(const TrigMatPoly& T, int G) {
    std::vector<CMat> out(G);
    for (int j = 0; j < G; ++j) out[j] = T.eval(2.0 * M_PI * j / G).mat();
    return out;
}

std::vector<CMat> poly_on_grid(const std::vector<CMat>& coeffs, int G, Eigen::Index d) {
    // values via inverse FFT of the zero-padded coefficient array
    std::vector<CMat> vals(G, CMat::Zero(d, d));
    std::vector<Complex> buf(G);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) {
            std::fill(buf.begin(), buf.end(), Complex(0, 0));
            for (std::size_t k = 0; k < coeffs.size(); ++k) buf[k] = coeffs[k](r, c);
            // A(e^{it_j}) = sum_k c_k e^{ikt_j}: inverse DFT without the 1/G
            fft_inplace(buf, true);
            for (int j = 0; j < G; ++j) vals[j](r, c) = buf[j] * double(G);
        }
    return vals;
}

// coefficients 0..K of the causal projection of grid values, times scale
std::vector<CMat> causal_coeffs(const std::vector<CMat>& vals, int K, Eigen::Index d,
                                double scale) {
    const int G = static_cast<int>(vals.size());
    std::vector<CMat> out(K + 1, CMat::Zero(d, d));
    std::vector<Complex> buf(G);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) {
            for (int j = 0; j < G; ++j) buf[j] = vals[j](r, c);
            fft_inplace(buf, false);  // forward DFT; divide by G for coefficients
            for (int k = 0; k <= K; ++k) out[k](r, c) = buf[k] * (scale / double(G));
        }
    return out;
}

double residual_on_grid(const std::vector<CMat>& a_vals, const std::vector<CMat>& t_vals) {
    double mx = 0.0;
    for (std::size_t j = 0; j < a_vals.size(); ++j)
        mx = std::max(mx, (CMat(a_vals[j].adjoint() * a_vals[j]) - t_vals[j]).norm());
    return mx;
}

// gauge: constant unitary chosen so A(0) is PSD
void fix_gauge(std::vector<CMat>& coeffs) {
    Eigen::JacobiSVD<CMat> svd(coeffs[0], Eigen::ComputeThinU | Eigen::ComputeThinV);
    const CMat u = svd.matrixU() * svd.matrixV().adjoint();
    for (CMat& c : coeffs) c = (u.adjoint() * c).eval();
}

std::vector<CMat> bauer_factor(const TrigMatPoly& T, int blocks) {
    const Eigen::Index d = T.dim();
    const int N = T.band();
    const Eigen::Index M = blocks;
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(M * d, M * d);
    for (Eigen::Index i = 0; i < M; ++i)
        for (Eigen::Index j = 0; j < M; ++j) {
            const long n = long(j) - long(i);
            if (std::abs(n) <= N) big.block(i * d, j * d, d, d) = T.coeff(int(n));
        }
    Eigen::LLT<Eigen::MatrixXcd> llt(big);
    if (llt.info() != Eigen::Success)
        throw NumericError("bauer_factor: block-Toeplitz matrix not positive definite");
    const Eigen::MatrixXcd L = llt.matrixL();
    // bottom block row approximates A_k^dag at column M-1-k
    std::vector<CMat> coeffs(N + 1, CMat::Zero(d, d));
    for (int k = 0; k <= N; ++k)
        coeffs[k] = CMat(L.block((M - 1) * d, (M - 1 - k) * d, d, d)).adjoint();
    return coeffs;
}

// scalar symbols factor exactly by splitting the roots of z^N T(z): zeros of
// the outer factor are the roots on or outside the unit circle (boundary
// zeros have even multiplicity and split evenly). Covers scalar symbols that
// touch zero on the circle, where the Newton iteration has no footing.
std::vector<CMat> scalar_roots_factor(const TrigMatPoly& T) {
    const int N = T.band();
    Eigen::VectorXcd p(2 * N + 1);  // p_k = c_{k-N}
    for (int k = 0; k <= 2 * N; ++k) p[k] = T.coeff(k - N)(0, 0);
    const Complex lead = p[2 * N];
    if (std::abs(lead) < 1e-300)
        throw NumericError("spectral_factorize: scalar symbol has vanishing top band");
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    for (int k = 0; k < 2 * N; ++k) comp(k, 2 * N - 1) = -p[k] / lead;
    comp.block(1, 0, 2 * N - 1, 2 * N - 1).setIdentity();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> roots(es.eigenvalues().data(),
                               es.eigenvalues().data() + 2 * N);
    std::sort(roots.begin(), roots.end(),
              [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
    roots.resize(N);  // the N largest-modulus roots, one from each pair

    // expand a prod (z - s_k); |a|^2 from the top band coefficient
    Eigen::VectorXcd coef = Eigen::VectorXcd::Zero(N + 1);
    coef[0] = 1.0;
    for (int k = 0; k < N; ++k) {
        for (int j = k + 1; j >= 1; --j) coef[j] = coef[j - 1] - roots[k] * coef[j];
        coef[0] *= -roots[k];
    }
    Complex prod_s = 1.0;
    for (const Complex& s : roots) prod_s *= s;
    const double amp = std::sqrt(std::abs(lead) / std::max(std::abs(prod_s), 1e-300));
    std::vector<CMat> out(N + 1, CMat::Zero(1, 1));
    for (int k = 0; k <= N; ++k) out[k](0, 0) = amp * coef[k];
    return out;
}

// Iterate on a coarse power-of-two grid (the factor has N+1 coefficients and
// the aliasing of A^{-dag} decays geometrically), then measure the residual of
// the candidate on the full grid G; re-iterate on G only if the coarse answer
// does not survive the check.
int iteration_grid(int N, int G) {
    int g = 256;
    while (g < 32 * (N + 1)) g *= 2;
    return std::min(g, G);
}

FactorizeResult factorize_on_grid(const TrigMatPoly& T, double tol, int maxIter, int G) {
    const Eigen::Index d = T.dim();
    const int N = T.band();
    const std::vector<CMat> t_vals = eval_on_grid(T, G);

    double min_eig = std::numeric_limits<double>::infinity();
    double max_nrm = 0.0;
    for (const CMat& tv : t_vals) {
        min_eig = std::min(min_eig, eigh(HermMat::symmetrized(tv)).eigenvalues.minCoeff());
        max_nrm = std::max(max_nrm, tv.norm());
    }
    if (min_eig <= 1e-12 * std::max(max_nrm, 1.0)) {
        if (d == 1 && N >= 1 && min_eig >= -1e-10 * std::max(max_nrm, 1.0)) {
            std::vector<CMat> coeffs = scalar_roots_factor(T);
            FactorizeResult out;
            out.grid = G;
            out.used_fallback = true;
            out.residual = residual_on_grid(poly_on_grid(coeffs, G, 1), t_vals);
            fix_gauge(coeffs);
            out.factor = AnalyticMatPoly(1, N);
            for (int k = 0; k <= N; ++k) out.factor.coeff(k) = coeffs[k];
            return out;
        }
        throw NumericError("spectral_factorize: symbol not positive definite on the grid");
    }

    // start from the Cholesky factor of the zeroth Fourier coefficient
    CMat c0 = 0.5 * (T.coeff(0) + CMat(T.coeff(0).adjoint()));
    Eigen::LLT<CMat> llt(c0);
    if (llt.info() != Eigen::Success)
        throw NumericError("spectral_factorize: C_0 is not positive definite");
    const std::vector<CMat> init(1, CMat(CMat(llt.matrixL()).adjoint()));

    FactorizeResult out;
    out.grid = G;

    auto run_iteration = [&](int gi, std::vector<CMat> coeffs,
                             const std::vector<CMat>& tg) {
        coeffs.resize(N + 1, CMat::Zero(d, d));
        std::vector<CMat> a_vals = poly_on_grid(coeffs, gi, d);
        double best = residual_on_grid(a_vals, tg);
        std::vector<CMat> best_coeffs = coeffs;
        int since_best = 0;
        for (int it = 0; it < maxIter; ++it) {
            std::vector<CMat> w(gi);
            for (int j = 0; j < gi; ++j) {
                // A + A^{-dag} T pointwise
                const CMat adj = a_vals[j].adjoint();
                w[j] = a_vals[j] + adj.partialPivLu().solve(tg[j]);
            }
            coeffs = causal_coeffs(w, N, d, 0.5);
            a_vals = poly_on_grid(coeffs, gi, d);
            const double res = residual_on_grid(a_vals, tg);
            ++out.iterations;
            since_best = (res < best * 0.99) ? 0 : since_best + 1;
            if (res < best) {
                best = res;
                best_coeffs = coeffs;
            }
            if (best <= 0.5 * tol) break;
            if (since_best >= 15) break;  // stagnation: hand over to Bauer
        }
        return best_coeffs;
    };

    const int gi = iteration_grid(N, G);
    std::vector<CMat> best_coeffs =
        run_iteration(gi, init, gi == G ? t_vals : eval_on_grid(T, gi));
    double best = residual_on_grid(poly_on_grid(best_coeffs, G, d), t_vals);
    if (best > tol && gi < G) {
        // coarse answer did not survive the full-grid check; iterate there
        best_coeffs = run_iteration(G, best_coeffs, t_vals);
        best = residual_on_grid(poly_on_grid(best_coeffs, G, d), t_vals);
    }

    if (best > tol) {
        const int blocks = std::min<long>(512, std::max<long>(64, 48L * (N + 1)));
        std::vector<CMat> bc = bauer_factor(T, blocks);
        const std::vector<CMat> b_vals = poly_on_grid(bc, G, d);
        const double bres = residual_on_grid(b_vals, t_vals);
        if (bres < best) {
            best = bres;
            best_coeffs = std::move(bc);
            out.used_fallback = true;
        }
    }

    fix_gauge(best_coeffs);
    out.residual = best;
    out.factor = AnalyticMatPoly(d, N);
    for (int k = 0; k <= N; ++k) out.factor.coeff(k) = best_coeffs[k];
    return out;
}

}  // namespace

FactorizeResult spectral_factorize(const TrigMatPoly& T, double tol, int maxIter) {
    int G = 4096;
    while (G < 8 * (T.band() + 1)) G *= 2;
    FactorizeResult res;
    for (;;) {
        res = factorize_on_grid(T, tol, maxIter, G);
        if (res.residual <= tol || G >= 32768) break;
        G *= 2;
    }
    if (res.residual > tol)
        throw NumericError("spectral_factorize: stagnated at residual " +
                           std::to_string(res.residual));
    return res;
}

OuternessCertificate outerness_certificate(const AnalyticMatPoly& A) {
    OuternessCertificate cert;
    const int n_boundary = 8192;
    double prev_arg = 0.0;
    double acc = 0.0;
    double min_abs_boundary = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (int j = 0; j <= n_boundary; ++j) {
        const double t = 2.0 * M_PI * j / n_boundary;
        const Complex det = A.eval_circle(t).determinant();
        min_abs_boundary = std::min(min_abs_boundary, std::abs(det));
        scale = std::max(scale, std::abs(det));
        const double arg = std::arg(det);
        if (j > 0) {
            double diff = arg - prev_arg;
            while (diff > M_PI) diff -= 2.0 * M_PI;
            while (diff < -M_PI) diff += 2.0 * M_PI;
            acc += diff;
        }
        prev_arg = arg;
    }
    if (min_abs_boundary < 1e-12 * std::max(scale, 1.0))
        throw NumericError("outerness_certificate: boundary determinant too close to zero");
    cert.winding = std::lround(acc / (2.0 * M_PI));

    cert.minAbsDet = std::numeric_limits<double>::infinity();
    for (double r : {0.0, 0.25, 0.5, 0.75, 0.95}) {
        const int n_ang = (r == 0.0) ? 1 : 256;
        for (int j = 0; j < n_ang; ++j) {
            const Complex z = std::polar(r, 2.0 * M_PI * j / n_ang);
            cert.minAbsDet = std::min(cert.minAbsDet, std::abs(A.eval(z).determinant()));
        }
    }
    cert.ok = (cert.winding == 0) && (cert.minAbsDet > 0.0);
    return cert;
}

Complex conformal_map(Complex z) {
    if (std::abs(z) >= 1.0) throw InvalidInput("conformal_map: |z| < 1 required");
    const Complex i(0.0, 1.0);
    return std::log(i * (1.0 + z) / (1.0 - z)) / (i * M_PI);
}

Complex conformal_inverse(Complex w) {
    if (w.real() <= 0.0 || w.real() >= 1.0)
        throw InvalidInput("conformal_inverse: 0 < Re w < 1 required");
    const Complex i(0.0, 1.0);
    const Complex u = -i * std::exp(i * M_PI * w);
    return (u - 1.0) / (u + 1.0);
}

std::pair<int, double> disk_angle_to_strip(double psi) {
    // wrap to (-pi, pi]
    while (psi > M_PI) psi -= 2.0 * M_PI;
    while (psi <= -M_PI) psi += 2.0 * M_PI;
    if (psi == 0.0) return {0, -std::numeric_limits<double>::infinity()};
    if (psi == M_PI) return {0, std::numeric_limits<double>::infinity()};
    const int b = psi > 0 ? 1 : 0;
    const double c = std::tan(std::abs(psi) / 2.0);  // = e^{pi s}
    const double s = std::log(c) / M_PI;
    return {b, s};
}

double strip_to_disk_angle(int b, double s) {
    const double psi = 2.0 * std::atan(std::exp(M_PI * s));
    return b == 1 ? psi : -psi;
}

CMat StripFactorization::eval(Complex w) const {
    return disk_factor.eval(conformal_inverse(w));
}

CMat StripFactorization::boundary(int b, double s) const {
    return disk_factor.eval_circle(strip_to_disk_angle(b, s));
}

StripFactorization strip_factorize(const std::function<CMat(int, double)>& data,
                                   Eigen::Index d, int band, double lambda_floor,
                                   double tol, double fit_tol, int grid) {
    if ((grid & (grid - 1)) != 0) throw InvalidInput("strip_factorize: grid must be 2^k");
    const double s_clamp = 40.0;  // boundary data treated as constant past here

    // pull the two boundary lines back to the circle
    std::vector<CMat> samples(grid);
    for (int j = 0; j < grid; ++j) {
        const double psi = 2.0 * M_PI * j / grid;
        auto [b, s] = disk_angle_to_strip(psi);
        s = std::clamp(s, -s_clamp, s_clamp);
        CMat v = data(b, s);
        if (v.rows() != d || v.cols() != d)
            throw InvalidInput("strip_factorize: data dimension mismatch");
        samples[j] = 0.5 * (v + CMat(v.adjoint()));
    }

    // least-squares band-limited Fourier fit (truncated DFT on the uniform grid)
    TrigMatPoly fit(d, band);
    std::vector<Complex> buf(grid);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) {
            for (int j = 0; j < grid; ++j) buf[j] = samples[j](r, c);
            fft_inplace(buf, false);
            for (int n = -band; n <= band; ++n) {
                const int idx = (n >= 0) ? n : grid + n;
                fit.coeff(n)(r, c) = buf[idx] / double(grid);
            }
        }
    fit.hermitian_symmetrize();

    StripFactorization out;
    out.grid = grid;
    for (int j = 0; j < grid; ++j) {
        const double t = 2.0 * M_PI * j / grid;
        out.fit_error = std::max(out.fit_error, (fit.eval(t).mat() - samples[j]).norm());
    }
    if (out.fit_error > fit_tol)
        throw NumericError("strip_factorize: band-" + std::to_string(band) +
                           " fit error " + std::to_string(out.fit_error) +
                           " exceeds tolerance; increase the band N");

    if (fit.min_eig_on_grid() < 0.5 * lambda_floor)
        throw NumericError("strip_factorize: fitted symbol dips below the floor");

    const FactorizeResult f = spectral_factorize(fit, tol);
    out.disk_factor = f.factor;
    out.residual = f.residual;
    return out;
}

}  // namespace svv
