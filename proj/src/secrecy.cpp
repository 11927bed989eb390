#include "seclat/secrecy.hpp"

#include <algorithm>
#include <cmath>

#include "seclat/error.hpp"

namespace seclat {

HeckeDecomposition hecke_decompose(int n, const std::vector<BigInt>& theta_coeffs) {
    std::vector<Rational> q(theta_coeffs.begin(), theta_coeffs.end());
    return hecke_decompose(n, q);
}

HeckeDecomposition hecke_decompose(int n, const std::vector<Rational>& theta_coeffs) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
    const int top = n / 8;
    if (static_cast<int>(theta_coeffs.size()) < top + 1)
        throw Error(ErrorKind::InvalidArgument, "need theta coefficients A_0..A_" + std::to_string(top));
    if (theta_coeffs[0] != 1) throw Error(ErrorKind::InvalidArgument, "A_0 must be 1");

    // The r-th basis series starts at q^r with coefficient 1.
    const std::int64_t order = 4 * (top + 1) + 8;
    const QSeries t3 = theta3(order);
    const QSeries d8 = discriminant_delta8(std::max<std::int64_t>(order, 4));
    std::vector<QSeries> basis;
    for (int r = 0; r <= top; ++r) basis.push_back(mul(pow(t3, n - 8 * r), pow(d8, r)));

    HeckeDecomposition out{n, {}};
    std::vector<Rational> a;
    for (int m = 0; m <= top; ++m) {
        Rational v = theta_coeffs[m];
        for (int r = 0; r < m; ++r) v -= a[r] * basis[r].q_coeff(m);
        if (!is_integer(v))
            throw Error(ErrorKind::NonIntegerSolution,
                        "a_" + std::to_string(m) + " = " + fraction_string(v) + " is not an integer");
        a.push_back(v);
        out.a.push_back(v.get_num());
    }
    return out;
}

QSeries hecke_series(const HeckeDecomposition& d, std::int64_t trunc_order) {
    const QSeries t3 = theta3(trunc_order);
    const QSeries d8 = discriminant_delta8(std::max<std::int64_t>(trunc_order, 4)).truncated(trunc_order);
    QSeries s(trunc_order);
    for (std::size_t r = 0; r < d.a.size(); ++r) {
        if (d.a[r] == 0) continue;
        s = s + Rational(d.a[r]) * mul(pow(t3, d.n - 8 * static_cast<int>(r)), pow(d8, static_cast<unsigned>(r)));
    }
    return s;
}

Rational gain_from_decomposition(const HeckeDecomposition& d) {
    Rational sum = 0;
    Rational w = 1;
    for (const auto& a : d.a) {
        sum += Rational(a) * w;
        w /= 64;
    }
    if (sum == 0) throw Error(ErrorKind::ZeroDenominator, "sum of a_r 64^-r vanishes");
    return 1 / sum;
}

ClosedFormGain gain_closed_form(int n, std::int64_t kissing) {
    const Rational nn(n);
    const Rational denom = 1 - 2 * nn / 64 + (2 * nn * (nn - 23) + Rational(static_cast<long>(kissing))) / 4096;
    if (denom == 0) throw Error(ErrorKind::ZeroDenominator, "closed-form denominator vanishes");
    Rational g = 1 / denom;
    g.canonicalize();
    return {g, n < 16 || n > 23};
}

ThetaFunction ThetaFunction::from_decomposition(const HeckeDecomposition& d, std::string label) {
    std::vector<double> a;
    for (const auto& x : d.a) a.push_back(x.get_d());
    const int n = d.n;
    return ThetaFunction(
        n,
        [a, n](double y) {
            const double t3 = jacobi_at_iy(Jacobi::Theta3, y);
            const double t2 = jacobi_at_iy(Jacobi::Theta2, y);
            const double t4 = jacobi_at_iy(Jacobi::Theta4, y);
            const double d8 = std::pow(t2 * t4, 4) / 16.0;
            double s = 0.0;
            for (std::size_t r = 0; r < a.size(); ++r)
                if (a[r] != 0.0) s += a[r] * std::pow(t3, n - 8 * static_cast<int>(r)) * std::pow(d8, r);
            return s;
        },
        std::move(label));
}

ThetaFunction ThetaFunction::from_series(int n, QSeries s, std::string label) {
    return ThetaFunction(n, [s = std::move(s)](double y) { return eval_at_iy(s, y); }, std::move(label));
}

double secrecy_function(const ThetaFunction& theta, double vol, double y) {
    if (!(y > 0)) throw Error(ErrorKind::InvalidArgument, "y must be positive");
    if (!(vol > 0)) throw Error(ErrorKind::InvalidArgument, "volume must be positive");
    const int n = theta.dimension();
    const double v2 = std::pow(vol, 2.0 / n);
    return std::pow(jacobi_at_iy(Jacobi::Theta3, y * v2), n) / theta(y);
}

double z_of_y(double y) {
    const double t2 = jacobi_at_iy(Jacobi::Theta2, y);
    const double t3 = jacobi_at_iy(Jacobi::Theta3, y);
    const double t4 = jacobi_at_iy(Jacobi::Theta4, y);
    return std::pow(t2 * t4, 4) / std::pow(t3, 8);
}

MaxResult locate_max(const ThetaFunction& theta, double vol, double y_lo, double y_hi, int grid,
                     double refine_tol) {
    if (!(y_lo > 0) || !(y_lo < 1) || !(y_hi > 1)) throw Error(ErrorKind::InvalidArgument, "y range must contain 1");
    if (grid < 101) throw Error(ErrorKind::InvalidArgument, "grid needs at least 101 points");
    auto f = [&](double t) { return secrecy_function(theta, vol, std::exp(t)); };

    const double t_lo = std::log(y_lo), t_hi = std::log(y_hi);
    std::vector<double> ts(grid), vs(grid);
    for (int i = 0; i < grid; ++i) {
        ts[i] = t_lo + (t_hi - t_lo) * i / (grid - 1);
        vs[i] = f(ts[i]);
    }
    const auto [mn, mx] = std::minmax_element(vs.begin(), vs.end());
    if (*mx - *mn <= 1e-12 * std::fabs(*mx)) return {1.0, secrecy_function(theta, vol, 1.0)};

    const auto i = static_cast<int>(mx - vs.begin());
    double a = ts[std::max(i - 1, 0)], b = ts[std::min(i + 1, grid - 1)];
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > refine_tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double t = (a + b) / 2;
    return {std::exp(t), f(t)};
}

std::string augmented_label(const std::string& label, int extra_z) {
    if (extra_z == 0) return label;
    return label + (extra_z == 1 ? "⊕Z" : "⊕Z^" + std::to_string(extra_z));
}

std::vector<BestLattice> classify_best(const std::vector<CatalogEntry>& catalog, int dim) {
    if (dim < 9 || dim > 23) throw Error(ErrorKind::InvalidArgument, "classification covers dimensions 9..23");
    std::vector<BestLattice> best;
    for (const auto& e : catalog) {
        if (e.dimension > dim) continue;
        if (!best.empty() && e.gain < best.front().gain) continue;
        if (!best.empty() && e.gain > best.front().gain) best.clear();
        best.push_back({augmented_label(e.label, dim - e.dimension), e.gain, &e, dim - e.dimension});
    }
    if (best.empty()) throw Error(ErrorKind::EmptyDimension, "no catalog lattice of dimension <= " + std::to_string(dim));
    return best;
}

}  // namespace seclat
