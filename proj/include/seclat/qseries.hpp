#ifndef SECLAT_QSERIES_HPP
#define SECLAT_QSERIES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "seclat/rational.hpp"

namespace seclat {

/// Truncated power series in u = q^{1/4}, q = e^{pi i tau}, with exact rational
/// coefficients. Coefficients are known for every exponent below trunc_order;
/// only nonzero terms are stored.
///
/// Working in quarter powers of q lets theta_2 (exponents (m+1/2)^2) share a
/// representation with ordinary q-series such as theta_3 and lattice thetas.
class QSeries {
public:
    explicit QSeries(std::int64_t trunc_order);

    static QSeries constant(const Rational& c, std::int64_t trunc_order);

    /// Series sum_m coeffs[m] q^m, i.e. u-exponents 4m.
    static QSeries from_q_coefficients(const std::vector<BigInt>& coeffs, std::int64_t trunc_order);

    std::int64_t trunc_order() const { return trunc_order_; }
    const std::map<std::int64_t, Rational>& terms() const { return terms_; }

    /// Coefficient of u^e. Throws TruncationInsufficient when e >= trunc_order.
    Rational coeff(std::int64_t u_exponent) const;
    /// Coefficient of q^m (u^{4m}).
    Rational q_coeff(std::int64_t m) const { return coeff(4 * m); }

    /// Integer q-power coefficients for m < ceil(trunc_order / 4). Throws
    /// InvalidArgument if the series has a non-integer exponent or coefficient.
    std::vector<BigInt> integer_q_coefficients() const;

    /// Adds c * u^e; terms at or beyond trunc_order are dropped.
    void add_term(std::int64_t u_exponent, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const QSeries& other) const = default;

    /// Same series with a smaller truncation order.
    QSeries truncated(std::int64_t order) const;

    /// "1 + 2q + 2q^4 - 2q^9", quarter powers as q^(e/4).
    std::string to_string() const;

    /// Golden-file form: one "exponent/4 : num/den" line per stored term.
    std::string dump() const;

private:
    std::int64_t trunc_order_;
    std::map<std::int64_t, Rational> terms_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator*(const Rational& c, const QSeries& a);

/// Truncated Cauchy product; the result's order is the smaller input order.
QSeries mul(const QSeries& a, const QSeries& b);
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

/// Binary powering. pow(a, 0) is the constant 1 at a's order.
QSeries pow(const QSeries& a, unsigned e);

QSeries theta2(std::int64_t trunc_order);
QSeries theta3(std::int64_t trunc_order);
QSeries theta4(std::int64_t trunc_order);

/// Delta_8 = theta_2^4 theta_4^4 / 16 = q - 8q^2 + 28q^3 - ...
/// Requires trunc_order >= 4.
QSeries discriminant_delta8(std::int64_t trunc_order);

/// q prod_{m>=1} ((1 - q^{2m-1})(1 - q^{4m}))^8, the product form of Delta_8.
QSeries discriminant_delta8_product(std::int64_t trunc_order);

constexpr double kDefaultEvalTolerance = 1e-12;

/// Estimated magnitude of the omitted terms at tau = iy. The stored
/// coefficients define an envelope max|c| * (e / N)^p where p is the observed
/// polynomial growth rate between the lower and upper halves of the series;
/// the tail is the sum of that envelope against u^e over e >= trunc_order.
double tail_bound_at_iy(const QSeries& a, double y);

/// Sum of the stored terms at q = e^{-pi y}; no truncation check.
double sum_terms_at_iy(const QSeries& a, double y);

/// Value at tau = iy. Throws TruncationInsufficient when the tail bound
/// exceeds tolerance * max(1, |value|).
double eval_at_iy(const QSeries& a, double y, double tolerance = kDefaultEvalTolerance);

enum class Jacobi { Theta2, Theta3, Theta4 };

/// Smallest u-order whose omitted terms of theta_k at tau = iy are below
/// `relative` times the leading term.
std::int64_t jacobi_order_for(double y, double relative = 1e-18);

/// theta_k(iy) by summing the defining series to a y-dependent order.
double jacobi_at_iy(Jacobi which, double y);

}  // namespace seclat

#endif
