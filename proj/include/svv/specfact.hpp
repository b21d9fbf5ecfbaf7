#pragma once

#include "svv/types.hpp"

#include <json.hpp>

#include <functional>

namespace svv {

// Matrix-valued trigonometric polynomial T(e^{it}) = sum_{|n|<=N} C_n e^{int}
// with C_{-n} = C_n^dag, uniformly positive definite on the circle.
class TrigMatPoly {
public:
    TrigMatPoly() = default;
    TrigMatPoly(Eigen::Index d, int N);

    Eigen::Index dim() const { return d_; }
    int band() const { return N_; }
    const CMat& coeff(int n) const { return coeffs_.at(n + N_); }
    CMat& coeff(int n) { return coeffs_.at(n + N_); }

    // replace C_n by (C_n + C_{-n}^dag)/2 so the symbol is exactly Hermitian
    void hermitian_symmetrize();

    HermMat eval(double t) const;
    double min_eig_on_grid(int grid = 1024) const;
    double max_norm_on_grid(int grid = 1024) const;

    // B(z)^dag B(z) on the circle for an analytic polynomial B: a positive
    // band-limited symbol with a known factorization; shifted by ridge*I.
    static TrigMatPoly from_analytic_square(const std::vector<CMat>& b_coeffs,
                                            double ridge = 0.0);

    nlohmann::json to_json() const;
    static TrigMatPoly from_json(const nlohmann::json& j);

private:
    Eigen::Index d_ = 0;
    int N_ = 0;
    std::vector<CMat> coeffs_;  // index n + N
};

// Analytic matrix polynomial A(z) = sum_{k=0..K} A_k z^k on the closed disk.
class AnalyticMatPoly {
public:
    AnalyticMatPoly() = default;
    AnalyticMatPoly(Eigen::Index d, int K);

    Eigen::Index dim() const { return d_; }
    int degree() const { return K_; }
    const CMat& coeff(int k) const { return coeffs_.at(k); }
    CMat& coeff(int k) { return coeffs_.at(k); }

    CMat eval(Complex z) const;
    CMat eval_circle(double t) const;  // A(e^{it})

    nlohmann::json to_json() const;
    static AnalyticMatPoly from_json(const nlohmann::json& j);

private:
    Eigen::Index d_ = 0;
    int K_ = 0;
    std::vector<CMat> coeffs_;
};

struct FactorizeResult {
    AnalyticMatPoly factor;  // degree N, A(0) PSD gauge
    double residual = 0.0;   // max_grid ||A^dag A - T||_F on the final grid
    int iterations = 0;
    int grid = 0;
    bool used_fallback = false;  // Bauer block-Toeplitz path engaged
};

// T(e^{it}) = A(e^{it})^dag A(e^{it}) with A outer, via the Newton-type
// iteration A <- (1/2) P_+(A + A^{-dag} T) on an FFT grid (P_+ projects onto
// causal degrees 0..N), initialized from the Cholesky factor of C_0, falling
// back to Bauer's block-Toeplitz Cholesky on stagnation. The grid starts at
// 4096 points and doubles up to 32768 if the residual check fails.
FactorizeResult spectral_factorize(const TrigMatPoly& T, double tol = 1e-10,
                                   int maxIter = 200);

struct OuternessCertificate {
    long winding = 0;       // of det A(e^{it}) around 0, 8192 samples
    double minAbsDet = 0.0; // over interior radii {0,0.25,0.5,0.75,0.95}
    bool ok = false;        // winding == 0 and boundary det bounded away from 0
};

OuternessCertificate outerness_certificate(const AnalyticMatPoly& A);

// Conformal map phi(z) = (1/(i pi)) log(i (1+z)/(1-z)) from the open disk onto
// the open strip, and its inverse.
Complex conformal_map(Complex z);
Complex conformal_inverse(Complex w);

// Boundary correspondence: e^{i psi} -> (b, s) with b = 1 for psi in (0,pi)
// and b = 0 for psi in (-pi,0).
std::pair<int, double> disk_angle_to_strip(double psi);
double strip_to_disk_angle(int b, double s);

struct StripFactorization {
    AnalyticMatPoly disk_factor;
    double fit_error = 0.0;  // band-N Fourier fit vs the pulled-back samples
    double residual = 0.0;   // factorization residual vs the fitted symbol
    int grid = 0;

    CMat eval(Complex w) const;            // A on the strip
    CMat boundary(int b, double s) const;  // A(b + is)
};

// Wiener-Masani factorization with boundary data on the two strip lines,
// transported to the circle through the conformal map, fitted to a band-N
// trigonometric polynomial and factorized there. data(b, s) must be Hermitian,
// uniformly >= lambda_floor, bounded, with decay making the transported symbol
// fit a band-N polynomial; the fit error is reported and checked separately
// from the factorization residual.
StripFactorization strip_factorize(const std::function<CMat(int, double)>& data,
                                   Eigen::Index d, int band, double lambda_floor,
                                   double tol = 1e-8, double fit_tol = 1e-4,
                                   int grid = 4096);

// In-place radix-2 FFT (size must be a power of two); inverse includes 1/n.
void fft_inplace(std::vector<Complex>& a, bool inverse);

}  // namespace svv
