#ifndef SECLAT_SECRECY_HPP
#define SECLAT_SECRECY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "seclat/catalog.hpp"
#include "seclat/qseries.hpp"
#include "seclat/rational.hpp"

namespace seclat {

/// Theta_L = sum_r a_r theta_3^{n-8r} Delta_8^r.
struct HeckeDecomposition {
    int n = 0;
    std::vector<BigInt> a;
};

/// Solves for a_0..a_{floor(n/8)} from A_0..A_{floor(n/8)} by back-substitution.
HeckeDecomposition hecke_decompose(int n, const std::vector<BigInt>& theta_coeffs);
/// Rational input; NonIntegerSolution when some a_r is not an integer.
HeckeDecomposition hecke_decompose(int n, const std::vector<Rational>& theta_coeffs);

/// sum_r a_r theta_3^{n-8r} Delta_8^r as an exact series.
QSeries hecke_series(const HeckeDecomposition& d, std::int64_t trunc_order);

/// 1 / sum_r a_r 64^{-r}. ZeroDenominator when the sum vanishes.
Rational gain_from_decomposition(const HeckeDecomposition& d);

struct ClosedFormGain {
    Rational gain;
    bool advisory = false;  // n outside 16..23
};

/// 1 / (1 - 2n/64 + (2n(n-23) + K)/4096).
ClosedFormGain gain_closed_form(int n, std::int64_t kissing);

/// Theta_L evaluated on the imaginary axis.
class ThetaFunction {
public:
    ThetaFunction(int n, std::function<double(double)> eval, std::string label = {})
        : n_(n), eval_(std::move(eval)), label_(std::move(label)) {}

    /// Evaluates the decomposition with numerically summed Jacobi functions.
    static ThetaFunction from_decomposition(const HeckeDecomposition& d, std::string label = {});
    /// Evaluates a truncated series; TruncationInsufficient below the usable range.
    static ThetaFunction from_series(int n, QSeries s, std::string label = {});

    int dimension() const { return n_; }
    const std::string& label() const { return label_; }
    double operator()(double y) const { return eval_(y); }

private:
    int n_;
    std::function<double(double)> eval_;
    std::string label_;
};

/// theta_3(i y v^2)^n / Theta_L(iy) with v = vol^{1/n}.
double secrecy_function(const ThetaFunction& theta, double vol, double y);

/// theta_2^4 theta_4^4 / theta_3^8 at tau = iy.
double z_of_y(double y);

struct MaxResult {
    double argmax_y = 1.0;
    double value = 0.0;
};

/// Log-spaced grid search then golden-section refinement in log y. A flat
/// function reports y = 1.
MaxResult locate_max(const ThetaFunction& theta, double vol, double y_lo, double y_hi, int grid = 201,
                     double refine_tol = 1e-10);

struct BestLattice {
    std::string label;  // with "⊕Z^k" for augmented rows
    Rational gain;
    const CatalogEntry* base = nullptr;
    int extra_z = 0;
};

/// Entries of maximal gain in dimension dim (9..23), counting L ⊕ Z^k for
/// every lower-dimensional catalog row L. Ties are all returned.
std::vector<BestLattice> classify_best(const std::vector<CatalogEntry>& catalog, int dim);

std::string augmented_label(const std::string& label, int extra_z);

}  // namespace seclat

#endif
