#include "seclat/matrix.hpp"

#include <utility>

#include "seclat/error.hpp"

namespace seclat {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix::RationalMatrix(const std::vector<RationalVector>& rows) {
    rows_ = rows.size();
    cols_ = rows.empty() ? 0 : rows.front().size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalVector RationalMatrix::row(std::size_t i) const {
    return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void RationalMatrix::set_row(std::size_t i, const RationalVector& v) {
    if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "row length");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool RationalMatrix::is_integral() const {
    for (const auto& x : data_)
        if (x.get_den() != 1) return false;
    return true;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
    RationalMatrix c(a.rows(), b.cols());
    Rational t;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b(k, j) == 0) continue;
                t = a(i, k) * b(k, j);
                c(i, j) += t;
            }
        }
    return c;
}

RationalMatrix operator*(const Rational& c, const RationalMatrix& a) {
    RationalMatrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) *= c;
    return r;
}

RationalVector operator*(const RationalVector& v, const RationalMatrix& a) {
    if (v.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "vector-matrix product shapes");
    RationalVector out(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[i] * a(i, j);
    }
    return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product lengths");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

namespace {

// Forward elimination; returns the number of pivots and accumulates the
// determinant sign/product when the matrix is square.
std::size_t eliminate(RationalMatrix& a, Rational* det) {
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t r = 0;
    if (det) *det = 1;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a(p, c) == 0) ++p;
        if (p == m) {
            if (det) *det = 0;
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(r, j));
            if (det) *det = -*det;
        }
        if (det) *det *= a(r, c);
        for (std::size_t i = r + 1; i < m; ++i) {
            if (a(i, c) == 0) continue;
            Rational f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace

Rational determinant(RationalMatrix a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
    Rational det;
    const std::size_t r = eliminate(a, &det);
    return r == a.rows() ? det : Rational(0);
}

std::size_t rank(RationalMatrix a) { return eliminate(a, nullptr); }

RationalMatrix inverse(const RationalMatrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw Error(ErrorKind::InvalidArgument, "inverse of non-square matrix");
    RationalMatrix w = a;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && w(p, c) == 0) ++p;
        if (p == n) throw Error(ErrorKind::InvalidArgument, "singular matrix");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(p, j), w(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rational piv = w(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            w(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || w(i, c) == 0) continue;
            Rational f = w(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= f * w(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

RationalMatrix block_diagonal(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

std::vector<std::vector<BigInt>> hermite_basis(std::vector<std::vector<BigInt>> rows) {
    if (rows.empty()) return {};
    const std::size_t m = rows.size(), n = rows.front().size();
    std::size_t r = 0;
    BigInt g, x, y, s, t;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (std::size_t i = r + 1; i < m; ++i) {
            if (rows[i][c] == 0) continue;
            if (rows[r][c] == 0) {
                std::swap(rows[r], rows[i]);
                continue;
            }
            const BigInt a = rows[r][c], b = rows[i][c];
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            const BigInt ag = a / g, bg = b / g;
            for (std::size_t j = c; j < n; ++j) {
                s = x * rows[r][j] + y * rows[i][j];
                t = bg * rows[r][j] - ag * rows[i][j];
                rows[r][j] = s;
                rows[i][j] = t;
            }
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (std::size_t j = c; j < n; ++j) rows[r][j] = -rows[r][j];
        for (std::size_t i = 0; i < r; ++i) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t j = c; j < n; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

RationalMatrix integer_span_basis(const std::vector<RationalVector>& generators) {
    if (generators.empty()) return {};
    BigInt den = 1;
    for (const auto& g : generators)
        for (const auto& x : g) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<std::vector<BigInt>> rows;
    rows.reserve(generators.size());
    for (const auto& g : generators) {
        std::vector<BigInt> row;
        row.reserve(g.size());
        for (const auto& x : g) {
            Rational scaled = x * den;
            row.push_back(scaled.get_num());
        }
        rows.push_back(std::move(row));
    }
    auto basis = hermite_basis(std::move(rows));
    RationalMatrix out(basis.size(), generators.front().size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) {
            out(i, j) = Rational(basis[i][j], den);
            out(i, j).canonicalize();
        }
    return out;
}

}  // namespace seclat
