#include "seclat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "seclat/error.hpp"

namespace seclat {

namespace {

RationalMatrix mmt(const RationalMatrix& m) { return m * m.transpose(); }

std::vector<std::vector<double>> to_double(const RationalMatrix& m) {
    std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_d();
    return out;
}

// Lower-triangular L with G = L L^T; rows of L realize the Gram matrix.
std::vector<std::vector<double>> cholesky(const std::vector<std::vector<double>>& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = g[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0) throw Error(ErrorKind::InvalidArgument, "Gram matrix is not positive definite");
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return l;
}

bool is_integer_matrix_product(const RationalMatrix& a, const RationalMatrix& b) {
    // a = T b with T integral?
    const RationalMatrix t = a * b.transpose() * inverse(mmt(b));
    return t.is_integral() && t * b == a;
}

// Floating LLL on a Gram matrix, tracking the integral change of basis. Only
// used to precondition the enumeration; every reported norm is recomputed
// exactly from the original Gram matrix.
struct Reduced {
    std::vector<std::vector<double>> gram;
    std::vector<std::vector<std::int64_t>> transform;  // rows: new basis in old coordinates
};

Reduced lll_gram(std::vector<std::vector<double>> g) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::int64_t>> t(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) t[i][i] = 1;

    auto size_reduce = [&](std::size_t k, std::size_t j, std::vector<std::vector<double>>& mu) {
        const double r = std::round(mu[k][j]);
        if (r == 0.0) return;
        const auto ri = static_cast<std::int64_t>(r);
        // b_k <- b_k - r b_j
        for (std::size_t c = 0; c < n; ++c) t[k][c] -= ri * t[j][c];
        const double gkj = g[k][j], gjj = g[j][j];
        for (std::size_t c = 0; c < n; ++c) {
            if (c == k) continue;
            g[k][c] -= r * g[j][c];
            g[c][k] = g[k][c];
        }
        g[k][k] = g[k][k] - 2 * r * gkj + r * r * gjj;
        for (std::size_t c = 0; c <= j; ++c) mu[k][c] -= r * (c == j ? 1.0 : mu[j][c]);
    };

    for (int pass = 0; pass < 1000; ++pass) {
        // Gram-Schmidt coefficients from the current Gram matrix.
        std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
        std::vector<double> bstar(n, 0.0);
        bool swapped = false;
        for (std::size_t k = 0; k < n && !swapped; ++k) {
            for (std::size_t j = 0; j < k; ++j) {
                double s = g[k][j];
                for (std::size_t c = 0; c < j; ++c) s -= mu[j][c] * mu[k][c] * bstar[c];
                mu[k][j] = s / bstar[j];
            }
            for (std::size_t j = k; j-- > 0;) size_reduce(k, j, mu);
            double s = g[k][k];
            for (std::size_t c = 0; c < k; ++c) s -= mu[k][c] * mu[k][c] * bstar[c];
            bstar[k] = s;
            if (k > 0 && bstar[k] < (0.99 - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
                std::swap(t[k], t[k - 1]);
                std::swap(g[k], g[k - 1]);
                for (auto& row : g) std::swap(row[k], row[k - 1]);
                swapped = true;
            }
        }
        if (!swapped) break;
    }
    return {g, t};
}

double ball_volume(int n) {
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

}  // namespace

Lattice::Lattice(RationalMatrix basis, Rational norm_scale, std::string label)
    : basis_(std::move(basis)), norm_scale_(std::move(norm_scale)), label_(std::move(label)) {
    if (basis_.rows() == 0) throw Error(ErrorKind::InvalidArgument, "empty lattice basis");
    if (basis_.rows() > basis_.cols()) throw Error(ErrorKind::InvalidArgument, "more basis rows than coordinates");
    if (norm_scale_ <= 0) throw Error(ErrorKind::InvalidArgument, "norm scale must be positive");
    gram_ = norm_scale_ * mmt(basis_);
    if (determinant(gram_) == 0) throw Error(ErrorKind::InvalidArgument, "basis rows are linearly dependent");
}

Lattice Lattice::with_label(std::string label) const {
    Lattice l = *this;
    l.label_ = std::move(label);
    return l;
}

std::vector<std::vector<double>> Lattice::real_basis() const {
    if (basis_.rows() == basis_.cols()) {
        auto b = to_double(basis_);
        const double f = std::sqrt(norm_scale_.get_d());
        for (auto& row : b)
            for (auto& x : row) x *= f;
        return b;
    }
    return cholesky(to_double(gram_));
}

std::optional<RationalVector> Lattice::coordinates(const RationalVector& ambient) const {
    if (static_cast<int>(ambient.size()) != ambient_dimension())
        throw Error(ErrorKind::DimensionMismatch, "vector length does not match ambient dimension");
    const RationalMatrix g0 = mmt(basis_);
    RationalVector rhs(basis_.rows());
    for (std::size_t i = 0; i < basis_.rows(); ++i) rhs[i] = dot(basis_.row(i), ambient);
    const RationalVector c = rhs * inverse(g0);  // g0 symmetric
    if (c * basis_ != ambient) return std::nullopt;
    return c;
}

const RationalMatrix& gram(const Lattice& l) { return l.gram(); }

Rational det_lattice(const Lattice& l) { return determinant(l.gram()); }

Lattice dual_basis(const Lattice& l) {
    const RationalMatrix& m = l.basis();
    RationalMatrix dual = inverse(mmt(m)) * m;
    return Lattice(std::move(dual), 1 / l.norm_scale(), l.label().empty() ? "" : l.label() + "*");
}

bool is_integral(const Lattice& l) { return l.gram().is_integral(); }

bool is_unimodular(const Lattice& l) { return is_integral(l) && det_lattice(l) == 1; }

bool is_even(const Lattice& l) {
    if (!is_unimodular(l)) return false;
    for (std::size_t i = 0; i < l.gram().rows(); ++i)
        if (l.gram()(i, i).get_num() % 2 != 0) return false;
    return true;
}

bool same_lattice(const Lattice& a, const Lattice& b) {
    if (a.dimension() != b.dimension() || a.ambient_dimension() != b.ambient_dimension())
        throw Error(ErrorKind::DimensionMismatch, "lattices live in different spaces");
    Rational r;
    if (!rational_sqrt(a.norm_scale() / b.norm_scale(), r)) return false;
    const RationalMatrix ma = r * a.basis();
    return is_integer_matrix_product(ma, b.basis()) && is_integer_matrix_product(b.basis(), ma);
}

std::vector<LatticeVector> enumerate_vectors_up_to_norm(const Lattice& l, const Rational& bound) {
    if (bound < 0) throw Error(ErrorKind::InvalidArgument, "negative norm bound");
    const int n = l.dimension();
    const RationalMatrix& g = l.gram();

    const double det = det_lattice(l).get_d();
    const double estimate = ball_volume(n) * std::pow(bound.get_d(), n / 2.0) / std::sqrt(det);
    if (estimate > static_cast<double>(kSearchNodeLimit))
        throw Error(ErrorKind::SearchTooLarge, "estimated " + std::to_string(estimate) + " lattice points");

    // Exact integer Gram matrix scaled by the common denominator.
    BigInt den = 1;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), g(i, j).get_den_mpz_t());
    std::vector<std::vector<std::int64_t>> gi(n, std::vector<std::int64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gi[i][j] = to_int64(Rational(g(i, j) * den));

    Reduced red = lll_gram(to_double(g));

    // Fincke-Pohst quadratic-form decomposition of the reduced Gram matrix.
    std::vector<std::vector<double>> q = red.gram;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (int k = i + 1; k < n; ++k)
            for (int m = k; m < n; ++m) q[k][m] -= q[k][i] * q[i][m];
    }

    const double limit = bound.get_d() * (1.0 + 1e-9) + 1e-9;
    std::vector<LatticeVector> out;
    std::vector<std::int64_t> x(n, 0);
    std::vector<double> remaining(n + 1, 0.0);
    std::uint64_t nodes = 0;
    remaining[n] = limit;

    std::vector<std::int64_t> orig(n);
    auto emit = [&]() {
        bool zero = true;
        for (int i = 0; i < n; ++i) zero = zero && x[i] == 0;
        if (zero) return;
        for (int c = 0; c < n; ++c) {
            std::int64_t s = 0;
            for (int i = 0; i < n; ++i) s += x[i] * red.transform[i][c];
            orig[c] = s;
        }
        __int128 acc = 0;
        for (int i = 0; i < n; ++i) {
            if (orig[i] == 0) continue;
            __int128 row = 0;
            for (int j = 0; j < n; ++j) row += static_cast<__int128>(gi[i][j]) * orig[j];
            acc += row * orig[i];
        }
        const auto hi = static_cast<std::int64_t>(acc);
        if (static_cast<__int128>(hi) != acc) throw Error(ErrorKind::TooLarge, "norm overflow");
        Rational norm(BigInt(static_cast<long>(hi)), den);
        norm.canonicalize();
        if (norm <= bound) out.push_back({orig, norm});
    };

    // Depth-first over coordinates n-1 .. 0.
    auto recurse = [&](auto&& self, int i) -> void {
        if (++nodes > kSearchNodeLimit) throw Error(ErrorKind::SearchTooLarge, "enumeration node limit reached");
        double center = 0.0;
        for (int j = i + 1; j < n; ++j) center -= q[i][j] * static_cast<double>(x[j]);
        const double radius = std::sqrt(std::max(0.0, remaining[i + 1] / q[i][i]));
        const auto lo = static_cast<std::int64_t>(std::ceil(center - radius - 1e-9));
        const auto hi = static_cast<std::int64_t>(std::floor(center + radius + 1e-9));
        for (std::int64_t v = lo; v <= hi; ++v) {
            const double d = static_cast<double>(v) - center;
            const double rest = remaining[i + 1] - q[i][i] * d * d;
            if (rest < -1e-9 * limit - 1e-12) continue;
            x[i] = v;
            remaining[i] = rest;
            if (i == 0)
                emit();
            else
                self(self, i - 1);
        }
        x[i] = 0;
    };
    recurse(recurse, n - 1);
    return out;
}

std::vector<BigInt> theta_coeffs_enum(const Lattice& l, std::int64_t max_norm) {
    if (!is_integral(l)) throw Error(ErrorKind::NotIntegral, "theta coefficients need an integral lattice");
    if (max_norm < 0) throw Error(ErrorKind::InvalidArgument, "negative norm bound");
    std::vector<BigInt> a(static_cast<std::size_t>(max_norm) + 1);
    a[0] = 1;
    for (const auto& v : enumerate_vectors_up_to_norm(l, max_norm)) {
        if (!is_integer(v.norm)) throw Error(ErrorKind::NotIntegral, "non-integer norm " + fraction_string(v.norm));
        a[static_cast<std::size_t>(to_int64(v.norm))] += 1;
    }
    return a;
}

QSeries theta_series_enum(const Lattice& l, const Rational& max_norm) {
    Rational quarter_bound = 4 * max_norm;
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), quarter_bound.get_num_mpz_t(), quarter_bound.get_den_mpz_t());
    QSeries s(to_int64(fl) + 1);
    s.add_term(0, 1);
    std::map<std::int64_t, std::int64_t> counts;
    for (const auto& v : enumerate_vectors_up_to_norm(l, max_norm)) {
        Rational e = 4 * v.norm;
        if (!is_integer(e)) throw Error(ErrorKind::NotIntegral, "norm " + fraction_string(v.norm) + " not in Z/4");
        ++counts[to_int64(e)];
    }
    for (const auto& [e, c] : counts) s.add_term(e, Rational(c));
    return s;
}

namespace {

std::pair<std::int64_t, std::int64_t> minimal_shell(const Lattice& l) {
    if (!is_integral(l)) throw Error(ErrorKind::NotIntegral, "kissing number needs an integral lattice");
    for (std::int64_t b = 1;; ++b) {
        auto vs = enumerate_vectors_up_to_norm(l, b);
        if (vs.empty()) continue;
        std::int64_t count = 0;
        for (const auto& v : vs)
            if (v.norm == b) ++count;
        return {b, count};
    }
}

}  // namespace

std::int64_t kissing_number(const Lattice& l) { return minimal_shell(l).second; }

std::int64_t minimal_norm(const Lattice& l) { return minimal_shell(l).first; }

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    const std::string label =
        a.label().empty() || b.label().empty() ? std::string{} : a.label() + "⊕" + b.label();
    Rational r;
    if (a.norm_scale() == b.norm_scale())
        return Lattice(block_diagonal(a.basis(), b.basis()), a.norm_scale(), label);
    if (rational_sqrt(a.norm_scale() / b.norm_scale(), r))
        return Lattice(block_diagonal(r * a.basis(), b.basis()), b.norm_scale(), label);
    if (rational_sqrt(b.norm_scale() / a.norm_scale(), r))
        return Lattice(block_diagonal(a.basis(), r * b.basis()), a.norm_scale(), label);
    throw Error(ErrorKind::IncompatibleScale, "norm multipliers differ by a non-square factor");
}

Lattice scale(const Lattice& l, const ScaleFactor& c) {
    if (c.r <= 0) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
    return Lattice(c.r * l.basis(), l.norm_scale() * (c.sqrt2 ? 2 : 1), l.label());
}

Lattice build_glue(const GlueRecipe& recipe) {
    const Lattice& base = recipe.base;
    const auto& glue = recipe.glue_vectors;
    if (glue.empty()) throw Error(ErrorKind::InvalidArgument, "glue set must contain the zero vector");
    for (const auto& g : glue)
        if (static_cast<int>(g.size()) != base.ambient_dimension())
            throw Error(ErrorKind::DimensionMismatch, "glue vector length");
    for (const auto& x : glue.front())
        if (x != 0) throw Error(ErrorKind::InvalidArgument, "first glue vector must be zero");

    const RationalMatrix g0inv = inverse(mmt(base.basis()));
    auto coords = [&](const RationalVector& v) {
        RationalVector rhs(base.basis().rows());
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = dot(base.basis().row(i), v);
        RationalVector c = rhs * g0inv;
        if (c * base.basis() != v) throw Error(ErrorKind::InvalidArgument, "glue vector outside the base span");
        return c;
    };
    auto frac = [](RationalVector c) {
        for (auto& x : c) {
            BigInt fl;
            mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
            x -= fl;
        }
        return c;
    };

    std::vector<RationalVector> keys;
    keys.reserve(glue.size());
    std::set<RationalVector> key_set;
    for (const auto& g : glue) {
        keys.push_back(frac(coords(g)));
        if (!key_set.insert(keys.back()).second)
            throw Error(ErrorKind::IndexMismatch, "two glue vectors lie in the same coset of the base");
    }
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i; j < keys.size(); ++j) {
            RationalVector s(keys[i].size());
            for (std::size_t k = 0; k < s.size(); ++k) s[k] = keys[i][k] + keys[j][k];
            if (!key_set.count(frac(std::move(s))))
                throw Error(ErrorKind::GlueNotClosed,
                            "g" + std::to_string(i) + " + g" + std::to_string(j) + " is not a glue coset");
        }
    if (recipe.unimodular_target) {
        const Rational m2(static_cast<long>(glue.size() * glue.size()));
        if (det_lattice(base) != m2)
            throw Error(ErrorKind::IndexMismatch, std::to_string(glue.size()) + " glue cosets but det(base) = " +
                                                      fraction_string(det_lattice(base)));
    }

    std::vector<RationalVector> gens;
    for (std::size_t i = 0; i < base.basis().rows(); ++i) gens.push_back(base.basis().row(i));
    for (std::size_t i = 1; i < glue.size(); ++i) gens.push_back(glue[i]);
    RationalMatrix basis = integer_span_basis(gens);
    return Lattice(std::move(basis), base.norm_scale(), base.label().empty() ? "" : base.label() + "+");
}

}  // namespace seclat
