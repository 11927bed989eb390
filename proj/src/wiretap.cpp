#include "seclat/wiretap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "seclat/error.hpp"

namespace seclat {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
        if (a[p][c] == 0.0) throw Error(ErrorKind::InvalidArgument, "singular basis");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        const double d = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0.0) continue;
            const double f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// Integer coordinates in a square basis, via a cleared-denominator inverse.
class CoordinateSolver {
public:
    explicit CoordinateSolver(const RationalMatrix& basis) {
        const RationalMatrix inv = inverse(basis);
        den_ = 1;
        for (std::size_t i = 0; i < inv.rows(); ++i)
            for (std::size_t j = 0; j < inv.cols(); ++j)
                mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(), inv(i, j).get_den_mpz_t());
        d_ = to_int64(den_);
        m_.assign(inv.rows(), IntVector(inv.cols()));
        for (std::size_t i = 0; i < inv.rows(); ++i)
            for (std::size_t j = 0; j < inv.cols(); ++j) m_[i][j] = to_int64(Rational(inv(i, j) * den_));
    }

    IntVector solve(const IntVector& v) const {
        const std::size_t n = m_.size();
        IntVector out(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < n; ++i) s += v[i] * m_[i][j];
            if (s % d_ != 0) throw Error(ErrorKind::InvalidArgument, "vector is not in the lattice");
            out[j] = s / d_;
        }
        return out;
    }

private:
    BigInt den_;
    std::int64_t d_ = 1;
    std::vector<IntVector> m_;
};

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix(splitmix(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL))) {}

CounterRng::result_type CounterRng::operator()() { return splitmix(key_ ^ splitmix(counter_++)); }

NestedPair::NestedPair(Lattice fine, Lattice coarse, std::vector<IntVector> reps, std::string scheme)
    : fine_(std::move(fine)), coarse_(std::move(coarse)), reps_(std::move(reps)), scheme_(std::move(scheme)) {
    const int n = fine_.dimension();
    if (coarse_.dimension() != n || coarse_.ambient_dimension() != fine_.ambient_dimension())
        throw Error(ErrorKind::DimensionMismatch, "fine and coarse lattices differ in dimension");
    Rational r;
    if (!rational_sqrt(coarse_.norm_scale() / fine_.norm_scale(), r))
        throw Error(ErrorKind::NotNested, "coarse lattice is not in the span of the fine lattice over Q");
    const RationalMatrix& mf = fine_.basis();
    const RationalMatrix target = r * coarse_.basis();
    const RationalMatrix t = target * mf.transpose() * inverse(mf * mf.transpose());
    if (!t.is_integral() || t * mf != target)
        throw Error(ErrorKind::NotNested, "coarse lattice is not a sublattice of the fine lattice");

    std::vector<std::vector<BigInt>> rows(n, std::vector<BigInt>(n));
    coarse_rows_.assign(n, IntVector(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            rows[i][j] = t(i, j).get_num();
            coarse_rows_[i][j] = to_int64(t(i, j));
        }
    for (const auto& h : hermite_basis(rows)) {
        IntVector v;
        for (const auto& x : h) v.push_back(to_int64(x));
        int p = 0;
        while (v[p] == 0) ++p;
        pivots_.push_back(p);
        hnf_.push_back(std::move(v));
    }
    basis_ = fine_.real_basis();

    const Rational index = abs(determinant(t));
    if (Rational(static_cast<long>(reps_.size())) != index)
        throw Error(ErrorKind::InvalidArgument, std::to_string(reps_.size()) + " coset reps for index " +
                                                    fraction_string(index));
    for (std::size_t i = 0; i < reps_.size(); ++i) {
        if (static_cast<int>(reps_[i].size()) != n) throw Error(ErrorKind::DimensionMismatch, "coset rep length");
        if (!key_index_.emplace(coset_key(reps_[i]), i).second)
            throw Error(ErrorKind::InvalidArgument, "two coset reps share a coset");
    }
}

IntVector NestedPair::coset_key(IntVector u) const {
    for (std::size_t i = 0; i < hnf_.size(); ++i) {
        const int p = pivots_[i];
        const std::int64_t q = floor_div(u[p], hnf_[i][p]);
        if (q == 0) continue;
        for (std::size_t j = 0; j < u.size(); ++j) u[j] -= q * hnf_[i][j];
    }
    return u;
}

std::size_t NestedPair::coset_of(const IntVector& u) const {
    const auto it = key_index_.find(coset_key(u));
    if (it == key_index_.end()) throw Error(ErrorKind::InvariantViolation, "point outside every listed coset");
    return it->second;
}

RealVector NestedPair::to_real(const IntVector& u) const {
    RealVector x(basis_.front().size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += static_cast<double>(u[i]) * basis_[i][j];
    }
    return x;
}

bool NestedPair::contains_in_coarse(const IntVector& u) const {
    const IntVector k = coset_key(u);
    return std::all_of(k.begin(), k.end(), [](std::int64_t x) { return x == 0; });
}

void ChannelConfig::validate() const {
    if (!(sigma_e > 0) || !(sigma_b > 0)) throw Error(ErrorKind::InvalidArgument, "noise levels must be positive");
    if (!(sigma_b < sigma_e)) throw Error(ErrorKind::InvalidArgument, "need sigma_b < sigma_e");
}

IntVector coset_encode_coords(const NestedPair& pair, std::size_t message, int box, CounterRng& rng) {
    if (message >= pair.coset_count())
        throw Error(ErrorKind::BadIndex, "message " + std::to_string(message) + " of " +
                                             std::to_string(pair.coset_count()));
    if (box < 0) throw Error(ErrorKind::InvalidArgument, "randomizer box must be non-negative");
    IntVector u = pair.coset_reps()[message];
    std::uniform_int_distribution<std::int64_t> pick(-box, box);
    for (const auto& row : pair.coarse_in_fine()) {
        const std::int64_t t = pick(rng);
        if (t == 0) continue;
        for (std::size_t j = 0; j < u.size(); ++j) u[j] += t * row[j];
    }
    return u;
}

RealVector coset_encode(const NestedPair& pair, std::size_t message, int box, CounterRng& rng) {
    return pair.to_real(coset_encode_coords(pair, message, box, rng));
}

RealVector awgn(const RealVector& x, double sigma, CounterRng& rng) {
    if (!(sigma >= 0)) throw Error(ErrorKind::InvalidArgument, "sigma must be non-negative");
    std::normal_distribution<double> noise(0.0, 1.0);
    RealVector y = x;
    for (auto& v : y) v += sigma * noise(rng);
    return y;
}

ClosestPointSearcher::ClosestPointSearcher(const std::vector<RealVector>& basis)
    : n_(static_cast<int>(basis.size())) {
    if (n_ == 0 || static_cast<int>(basis.front().size()) != n_)
        throw Error(ErrorKind::DimensionMismatch, "closest-point search needs a square basis");
    if (n_ > kMaxDecodeDimension) throw Error(ErrorKind::SearchTooLarge, "exact decoding limited to 16 dimensions");
    inv_ = invert(basis);
    q_.assign(n_, std::vector<double>(n_, 0.0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) q_[i][j] += basis[i][k] * basis[j][k];
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            q_[j][i] = q_[i][j];
            q_[i][j] /= q_[i][i];
        }
        for (int k = i + 1; k < n_; ++k)
            for (int m = k; m < n_; ++m) q_[k][m] -= q_[k][i] * q_[i][m];
    }
}

IntVector ClosestPointSearcher::nearest(const RealVector& y) const {
    if (static_cast<int>(y.size()) != n_) throw Error(ErrorKind::DimensionMismatch, "point length");
    const int n = n_;
    std::vector<double> c(n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) c[j] += y[k] * inv_[k][j];

    IntVector u(n, 0), best(n, 0);
    double best_d = std::numeric_limits<double>::infinity();
    std::vector<double> partial(n + 1, 0.0);
    std::uint64_t nodes = 0;

    auto slack = [](double d) { return 1e-12 * (1.0 + d); };
    auto recurse = [&](auto&& self, int i) -> void {
        double center = c[i];
        for (int j = i + 1; j < n; ++j) center -= q_[i][j] * (static_cast<double>(u[j]) - c[j]);
        const auto start = static_cast<std::int64_t>(std::llround(center));
        // Zig-zag outward from the nearest integer; each side stops at the radius.
        for (int side = 0; side < 2; ++side) {
            for (std::int64_t step = 0;; ++step) {
                if (side == 1 && step == 0) continue;
                const std::int64_t v = side == 0 ? start + step : start - step;
                if (++nodes > kSearchNodeLimit) throw Error(ErrorKind::SearchTooLarge, "closest-point node limit");
                const double diff = static_cast<double>(v) - center;
                const double d = partial[i + 1] + q_[i][i] * diff * diff;
                if (d > best_d + slack(best_d)) break;
                u[i] = v;
                partial[i] = d;
                if (i == 0) {
                    if (std::isinf(best_d) || d < best_d - slack(best_d) || u < best) {
                        best_d = std::min(best_d, d);
                        best = u;
                    }
                } else {
                    self(self, i - 1);
                }
            }
        }
    };
    recurse(recurse, n - 1);
    return best;
}

IntVector nearest_point(const Lattice& l, const RealVector& y) {
    if (static_cast<int>(y.size()) != l.dimension()) throw Error(ErrorKind::DimensionMismatch, "point length");
    if (l.dimension() > kMaxDecodeDimension) throw Error(ErrorKind::SearchTooLarge, "exact decoding limited to 16 dimensions");
    return ClosestPointSearcher(l.real_basis()).nearest(y);
}

SimResult eve_decision_mc(const NestedPair& pair, const ChannelConfig& cfg, std::int64_t trials,
                          std::uint64_t seed, int box, unsigned threads) {
    cfg.validate();
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
    const ClosestPointSearcher searcher(pair.real_basis());
    constexpr std::int64_t kBlock = 1024;
    const std::int64_t blocks = (trials + kBlock - 1) / kBlock;
    std::vector<std::int64_t> correct(blocks, 0);

    auto run_block = [&](std::int64_t b) {
        CounterRng rng(seed, static_cast<std::uint64_t>(b));
        std::uniform_int_distribution<std::size_t> message(0, pair.coset_count() - 1);
        const std::int64_t count = std::min(kBlock, trials - b * kBlock);
        std::int64_t ok = 0;
        for (std::int64_t t = 0; t < count; ++t) {
            const std::size_t m = message(rng);
            const RealVector z = awgn(pair.to_real(coset_encode_coords(pair, m, box, rng)), cfg.sigma_e, rng);
            if (pair.coset_of(searcher.nearest(z)) == m) ++ok;
        }
        correct[b] = ok;
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::int64_t>(threads, blocks));
    if (threads <= 1) {
        for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::int64_t b = w; b < blocks; b += threads) run_block(b);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    SimResult r;
    r.trials = trials;
    for (auto c : correct) r.correct += c;
    r.p_hat = static_cast<double>(r.correct) / static_cast<double>(trials);
    r.ci95_halfwidth = 1.96 * std::sqrt(r.p_hat * (1.0 - r.p_hat) / static_cast<double>(trials));
    return r;
}

double coset_theta_sum(const Lattice& l, double sigma, const Rational& bound) {
    if (!(sigma > 0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
    const double k = 1.0 / (2.0 * sigma * sigma);
    // Count per shell first; summing thousands of tiny terms one by one loses digits.
    std::map<Rational, std::int64_t> shells;
    for (const auto& v : enumerate_vectors_up_to_norm(l, bound)) ++shells[v.norm];
    double s = 1.0;
    for (const auto& [norm, count] : shells) s += static_cast<double>(count) * std::exp(-norm.get_d() * k);
    return s;
}

double theta_tail_estimate(const Lattice& l, double sigma, double bound) {
    const int n = l.dimension();
    const double vol = std::sqrt(det_lattice(l).get_d());
    const double scale = std::pow(sigma * std::sqrt(2.0 * std::numbers::pi), n) / vol;
    return scale * boost::math::gamma_q(n / 2.0, bound / (2.0 * sigma * sigma));
}

SecondMoment second_moment_mc(const Lattice& l, std::int64_t samples, std::uint64_t seed) {
    if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
    const auto basis = l.real_basis();
    const ClosestPointSearcher searcher(basis);
    const int n = l.dimension();
    CounterRng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double sum = 0.0, sum2 = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
        RealVector y(n, 0.0);
        for (int i = 0; i < n; ++i) {
            const double u = unit(rng);
            for (int j = 0; j < n; ++j) y[j] += u * basis[i][j];
        }
        const IntVector k = searcher.nearest(y);
        double e2 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p = 0.0;
            for (int i = 0; i < n; ++i) p += static_cast<double>(k[i]) * basis[i][j];
            e2 += (y[j] - p) * (y[j] - p);
        }
        sum += e2;
        sum2 += e2 * e2;
    }
    const double N = static_cast<double>(samples);
    const double mean = sum / N;
    const double var = std::max(0.0, (sum2 - N * mean * mean) / (N - 1));
    const double vol = std::sqrt(det_lattice(l).get_d());
    return {vol * mean, vol * std::sqrt(var / N)};
}

double theta_approx_pce(const NestedPair& pair, const ChannelConfig& cfg, const Rational& norm_bound,
                        std::optional<double> second_moment) {
    cfg.validate();
    const double sigma = cfg.sigma_e;
    double sum = 0.0;
    try {
        sum = coset_theta_sum(pair.coarse(), sigma, norm_bound);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SearchTooLarge) throw;
        throw Error(ErrorKind::TailTooLarge, "coarse lattice not enumerable to the required norm");
    }
    const double tail = theta_tail_estimate(pair.coarse(), sigma, norm_bound.get_d());
    if (tail > 1e-12 * sum)
        throw Error(ErrorKind::TailTooLarge, "estimated remainder " + std::to_string(tail) + " beyond norm bound");
    const int n = pair.dimension();
    const double vol_b = std::sqrt(det_lattice(pair.fine()).get_d());
    double p = sum * vol_b / std::pow(sigma * std::sqrt(2.0 * std::numbers::pi), n);
    if (second_moment) p *= 1.0 - *second_moment / (2.0 * sigma * sigma * vol_b);
    return p;
}

double theta_approx_pce(const NestedPair& pair, const ChannelConfig& cfg, std::optional<double> second_moment) {
    cfg.validate();
    const double sigma = cfg.sigma_e;
    double x = pair.dimension() / 2.0 + 1.0;
    while (theta_tail_estimate(pair.coarse(), sigma, 2.0 * sigma * sigma * x) > 1e-13) x += 1.0;
    const double bound = std::ceil(2.0 * sigma * sigma * x);
    return theta_approx_pce(pair, cfg, Rational(static_cast<long>(bound)), second_moment);
}

NestedPair build_nested_from_code(const BinaryCode& c, NestingScheme scheme) {
    if (!is_self_dual(c)) throw Error(ErrorKind::NotSelfDual, "nested pairs need a self-dual code");
    const int n = c.length();
    const int k = c.dimension();
    Lattice fine = construction_a(c);
    const CoordinateSolver coords(fine.basis());

    std::vector<Word> codewords;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << k); ++i) {
        Word w = 0;
        for (int b = 0; b < k; ++b)
            if (i >> b & 1) w ^= c.rows()[b];
        codewords.push_back(w);
    }
    auto lift = [n](Word w, std::int64_t f) {
        IntVector v(n, 0);
        for (int j = 0; j < n; ++j)
            if (w >> j & 1) v[j] = f;
        return v;
    };

    std::vector<IntVector> reps;
    if (scheme == NestingScheme::Zn) {
        Lattice coarse(Rational(2) * RationalMatrix::identity(n), Rational(1, 2), "sqrt2 Z^" + std::to_string(n));
        for (Word w : codewords) reps.push_back(coords.solve(lift(w, 1)));
        return NestedPair(std::move(fine), std::move(coarse), std::move(reps), "zn");
    }

    std::vector<int> free_cols;
    std::vector<bool> is_pivot(n, false);
    for (int p : c.pivots()) is_pivot[p] = true;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Lattice coarse(Rational(2) * fine.basis(), Rational(1, 2), "2" + fine.label());
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << free_cols.size()); ++i) {
        Word dagger = 0;
        for (std::size_t b = 0; b < free_cols.size(); ++b)
            if (i >> b & 1) dagger |= Word{1} << free_cols[b];
        const IntVector d = lift(dagger, 2);
        for (Word w : codewords) {
            IntVector v = lift(w, 1);
            for (int j = 0; j < n; ++j) v[j] += d[j];
            reps.push_back(coords.solve(v));
        }
    }
    return NestedPair(std::move(fine), std::move(coarse), std::move(reps), "2lambda");
}

NestedPair integer_pair(int n, int a) {
    if (n < 1 || a < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 1 and a >= 1");
    std::vector<IntVector> reps;
    IntVector u(n, 0);
    while (true) {
        reps.push_back(u);
        int i = 0;
        while (i < n && ++u[i] == a) u[i++] = 0;
        if (i == n) break;
    }
    Lattice fine(RationalMatrix::identity(n), 1, "Z^" + std::to_string(n));
    Lattice coarse(Rational(a) * RationalMatrix::identity(n), 1, std::to_string(a) + "Z^" + std::to_string(n));
    return NestedPair(std::move(fine), std::move(coarse), std::move(reps), "integer");
}

NestingScheme parse_scheme(const std::string& name) {
    if (name == "zn") return NestingScheme::Zn;
    if (name == "2lambda") return NestingScheme::TwoLambda;
    throw Error(ErrorKind::UnknownName, "unknown nesting scheme '" + name + "'");
}

std::string scheme_name(NestingScheme s) { return s == NestingScheme::Zn ? "zn" : "2lambda"; }

}  // namespace seclat
