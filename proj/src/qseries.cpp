#include "seclat/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "seclat/error.hpp"

namespace seclat {

QSeries::QSeries(std::int64_t trunc_order) : trunc_order_(trunc_order) {
    if (trunc_order < 0) throw Error(ErrorKind::InvalidArgument, "negative truncation order");
}

QSeries QSeries::constant(const Rational& c, std::int64_t trunc_order) {
    QSeries s(trunc_order);
    s.add_term(0, c);
    return s;
}

QSeries QSeries::from_q_coefficients(const std::vector<BigInt>& coeffs, std::int64_t trunc_order) {
    QSeries s(trunc_order);
    for (std::size_t m = 0; m < coeffs.size(); ++m) s.add_term(4 * static_cast<std::int64_t>(m), Rational(coeffs[m]));
    return s;
}

Rational QSeries::coeff(std::int64_t u_exponent) const {
    if (u_exponent >= trunc_order_) {
        throw Error(ErrorKind::TruncationInsufficient, "coefficient u^" + std::to_string(u_exponent) +
                                                           " beyond truncation order " + std::to_string(trunc_order_));
    }
    auto it = terms_.find(u_exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<BigInt> QSeries::integer_q_coefficients() const {
    std::vector<BigInt> out(static_cast<std::size_t>((trunc_order_ + 3) / 4));
    for (const auto& [e, c] : terms_) {
        if (e % 4 != 0 || !is_integer(c)) {
            throw Error(ErrorKind::InvalidArgument, "series has non-integral q-expansion");
        }
        out[static_cast<std::size_t>(e / 4)] = c.get_num();
    }
    return out;
}

void QSeries::add_term(std::int64_t u_exponent, const Rational& c) {
    if (u_exponent < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
    if (u_exponent >= trunc_order_ || c == 0) return;
    auto [it, inserted] = terms_.emplace(u_exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

QSeries QSeries::truncated(std::int64_t order) const {
    QSeries s(std::min(order, trunc_order_));
    for (const auto& [e, c] : terms_) s.add_term(e, c);
    return s;
}

std::string QSeries::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = (mag == 1);
        if (e == 0) {
            os << (is_integer(mag) ? mag.get_num().get_str() : "(" + fraction_string(mag) + ")");
            continue;
        }
        if (!unit) os << (is_integer(mag) ? mag.get_num().get_str() : "(" + fraction_string(mag) + ")");
        os << "q";
        if (e % 4 == 0) {
            if (e != 4) os << "^" << e / 4;
        } else {
            Rational ex(e, 4);
            ex.canonicalize();
            os << "^(" << ex.get_num().get_str() << "/" << ex.get_den().get_str() << ")";
        }
    }
    return os.str();
}

std::string QSeries::dump() const {
    std::ostringstream os;
    for (const auto& [e, c] : terms_) os << e << "/4 : " << fraction_string(c) << "\n";
    return os.str();
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries s(std::min(a.trunc_order(), b.trunc_order()));
    for (const auto& [e, c] : a.terms()) s.add_term(e, c);
    for (const auto& [e, c] : b.terms()) s.add_term(e, c);
    return s;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + Rational(-1) * b; }

QSeries operator*(const Rational& c, const QSeries& a) {
    QSeries s(a.trunc_order());
    for (const auto& [e, x] : a.terms()) s.add_term(e, c * x);
    return s;
}

QSeries mul(const QSeries& a, const QSeries& b) {
    const std::int64_t order = std::min(a.trunc_order(), b.trunc_order());
    std::map<std::int64_t, Rational> acc;
    Rational t;
    for (const auto& [ea, ca] : a.terms()) {
        if (ea >= order) break;
        for (const auto& [eb, cb] : b.terms()) {
            if (ea + eb >= order) break;
            t = ca * cb;
            acc[ea + eb] += t;
        }
    }
    QSeries s(order);
    for (const auto& [e, c] : acc) s.add_term(e, c);
    return s;
}

QSeries pow(const QSeries& a, unsigned e) {
    QSeries result = QSeries::constant(1, a.trunc_order());
    QSeries base = a;
    while (e > 0) {
        if (e & 1u) result = mul(result, base);
        e >>= 1u;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

QSeries theta2(std::int64_t trunc_order) {
    QSeries s(trunc_order);
    for (std::int64_t m = 0; (2 * m + 1) * (2 * m + 1) < trunc_order; ++m) s.add_term((2 * m + 1) * (2 * m + 1), 2);
    return s;
}

QSeries theta3(std::int64_t trunc_order) {
    QSeries s(trunc_order);
    s.add_term(0, 1);
    for (std::int64_t k = 1; 4 * k * k < trunc_order; ++k) s.add_term(4 * k * k, 2);
    return s;
}

QSeries theta4(std::int64_t trunc_order) {
    QSeries s(trunc_order);
    s.add_term(0, 1);
    for (std::int64_t k = 1; 4 * k * k < trunc_order; ++k) s.add_term(4 * k * k, (k % 2) ? -2 : 2);
    return s;
}

QSeries discriminant_delta8(std::int64_t trunc_order) {
    if (trunc_order < 4) throw Error(ErrorKind::InvalidArgument, "Delta_8 needs truncation order >= 4");
    return Rational(1, 16) * mul(pow(theta2(trunc_order), 4), pow(theta4(trunc_order), 4));
}

QSeries discriminant_delta8_product(std::int64_t trunc_order) {
    if (trunc_order < 4) throw Error(ErrorKind::InvalidArgument, "Delta_8 needs truncation order >= 4");
    QSeries s(trunc_order);
    s.add_term(4, 1);
    for (std::int64_t m = 1; 4 * (2 * m - 1) < trunc_order; ++m) {
        QSeries f = QSeries::constant(1, trunc_order);
        f.add_term(4 * (2 * m - 1), -1);
        QSeries g = QSeries::constant(1, trunc_order);
        g.add_term(16 * m, -1);
        s = mul(s, pow(mul(f, g), 8));
    }
    return s;
}

double tail_bound_at_iy(const QSeries& a, double y) {
    if (y <= 0) throw Error(ErrorKind::InvalidArgument, "y must be positive");
    const std::int64_t n = a.trunc_order();
    if (a.terms().empty() || n == 0) return 0.0;
    double cmax = 0.0, cmax_low = 0.0;
    for (const auto& [e, c] : a.terms()) {
        const double v = std::fabs(c.get_d());
        cmax = std::max(cmax, v);
        if (2 * e < n) cmax_low = std::max(cmax_low, v);
    }
    double p = 0.0;
    if (cmax_low > 0.0 && cmax > cmax_low) p = std::clamp(std::log2(cmax / cmax_low), 0.0, 64.0);

    const double log_u = -std::numbers::pi * y / 4.0;
    if (p == 0.0) return cmax * std::exp(log_u * static_cast<double>(n)) / (1.0 - std::exp(log_u));

    double sum = 0.0;
    const double nn = static_cast<double>(n);
    for (std::int64_t k = 0; k < 50'000'000; ++k) {
        const double e = nn + static_cast<double>(k);
        const double term = cmax * std::exp(p * std::log(e / nn) + log_u * e);
        sum += term;
        // Past the envelope's peak the terms decay at least geometrically.
        if (e * (-log_u) > p && term < sum * 1e-18) return sum;
    }
    return std::numeric_limits<double>::infinity();
}

double sum_terms_at_iy(const QSeries& a, double y) {
    if (y <= 0) throw Error(ErrorKind::InvalidArgument, "y must be positive");
    const double log_u = -std::numbers::pi * y / 4.0;
    double s = 0.0;
    for (const auto& [e, c] : a.terms()) s += c.get_d() * std::exp(log_u * static_cast<double>(e));
    return s;
}

double eval_at_iy(const QSeries& a, double y, double tolerance) {
    const double value = sum_terms_at_iy(a, y);
    const double tail = tail_bound_at_iy(a, y);
    if (!(tail <= tolerance * std::max(1.0, std::fabs(value)))) {
        std::ostringstream os;
        os << "tail bound " << tail << " at y=" << y << " exceeds tolerance " << tolerance << " (order "
           << a.trunc_order() << ")";
        throw Error(ErrorKind::TruncationInsufficient, os.str());
    }
    return value;
}

std::int64_t jacobi_order_for(double y, double relative) {
    if (y <= 0) throw Error(ErrorKind::InvalidArgument, "y must be positive");
    return static_cast<std::int64_t>(std::ceil(4.0 * std::log(1.0 / relative) / (std::numbers::pi * y))) + 8;
}

double jacobi_at_iy(Jacobi which, double y) {
    const std::int64_t order = jacobi_order_for(y);
    switch (which) {
        case Jacobi::Theta2: return eval_at_iy(theta2(order), y);
        case Jacobi::Theta3: return eval_at_iy(theta3(order), y);
        case Jacobi::Theta4: return eval_at_iy(theta4(order), y);
    }
    return 0.0;
}

}  // namespace seclat
