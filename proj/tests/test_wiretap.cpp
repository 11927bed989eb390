#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "seclat/catalog.hpp"
#include "seclat/codes.hpp"
#include "seclat/error.hpp"
#include "seclat/qseries.hpp"
#include "seclat/root_lattices.hpp"
#include "seclat/wiretap.hpp"

using namespace seclat;

namespace {

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Fine Z, coarse 2Z: the coset is right when the noise lands within 1/2 of
// an even integer.
double parity_oracle(double sigma) {
    double p = 0;
    for (int k = -50; k <= 50; ++k) p += phi((2 * k + 0.5) / sigma) - phi((2 * k - 0.5) / sigma);
    return p;
}

double dist2(const RealVector& a, const RealVector& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

RealVector to_real(const std::vector<std::vector<double>>& basis, const IntVector& u) {
    RealVector x(basis[0].size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += static_cast<double>(u[i]) * basis[i][j];
    return x;
}

BinaryCode code_2() { return BinaryCode(2, {parse_word("11")}); }
BinaryCode code_4() { return BinaryCode(4, {parse_word("1100"), parse_word("0011")}); }
BinaryCode hamming() {
    return BinaryCode(8, {parse_word("11110000"), parse_word("00111100"), parse_word("00001111"),
                          parse_word("01010101")});
}

}  // namespace

TEST(Rng, CounterStreamsAreReproducibleAndDistinct) {
    CounterRng a(7, 0), b(7, 0), c(7, 1), d(8, 0);
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        EXPECT_EQ(x, b());
        EXPECT_NE(x, c());
        EXPECT_NE(x, d());
    }
}

TEST(Encode, TrivialCase) {
    const NestedPair p = integer_pair(3, 2);
    CounterRng rng(1);
    EXPECT_EQ(coset_encode(p, 0, 0, rng), (RealVector{0, 0, 0}));
    EXPECT_THROW(coset_encode(p, 8, 0, rng), Error);
}

TEST(Encode, DifferenceFromRepIsInCoarse) {
    for (auto scheme : {NestingScheme::Zn, NestingScheme::TwoLambda}) {
        const NestedPair p = build_nested_from_code(hamming(), scheme);
        CounterRng rng(3);
        for (int t = 0; t < 500; ++t) {
            const std::size_t m = static_cast<std::size_t>(t) % p.coset_count();
            IntVector u = coset_encode_coords(p, m, kRandomizerBox, rng);
            for (std::size_t i = 0; i < u.size(); ++i) u[i] -= p.coset_reps()[m][i];
            EXPECT_TRUE(p.contains_in_coarse(u));
            EXPECT_EQ(p.coset_of(coset_encode_coords(p, m, kRandomizerBox, rng)), m);
        }
    }
}

TEST(Encode, ZnSchemePointsLieOverCodewords) {
    // x = (2z + c)/sqrt2 for a codeword c.
    const BinaryCode c = hamming();
    const NestedPair p = build_nested_from_code(c, NestingScheme::Zn);
    CounterRng rng(9);
    for (int t = 0; t < 200; ++t) {
        const RealVector x = coset_encode(p, static_cast<std::size_t>(t) % 16, kRandomizerBox, rng);
        Word w = 0;
        for (int j = 0; j < 8; ++j) {
            const double v = x[j] * std::numbers::sqrt2;
            const long r = std::lround(v);
            EXPECT_NEAR(v, static_cast<double>(r), 1e-9);
            if (r % 2 != 0) w |= Word{1} << j;
        }
        EXPECT_TRUE(c.contains(w));
    }
}

TEST(Nested, CodeSchemesIndex) {
    EXPECT_EQ(build_nested_from_code(hamming(), NestingScheme::Zn).coset_count(), 16u);
    const NestedPair p = build_nested_from_code(hamming(), NestingScheme::TwoLambda);
    EXPECT_EQ(p.coset_count(), 256u);
    const Rational ratio = det_lattice(p.coarse()) / det_lattice(p.fine());
    EXPECT_EQ(ratio, 256 * 256);
    EXPECT_THROW(build_nested_from_code(BinaryCode(3, {parse_word("111")}), NestingScheme::Zn), Error);
}

TEST(Nested, NotNested) {
    const Lattice fine = integer_lattice(1);
    const Lattice coarse(RationalMatrix(std::vector<RationalVector>{{Rational(1, 2)}}));
    try {
        NestedPair(fine, coarse, {{0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotNested);
    }
    EXPECT_THROW(NestedPair(integer_lattice(1), scale(integer_lattice(1), {2, false}), {{0}, {2}}), Error);
}

TEST(Channel, SigmaOrder) {
    EXPECT_THROW((ChannelConfig{1.0, 0.5}.validate()), Error);
    EXPECT_THROW((ChannelConfig{0.0, 0.5}.validate()), Error);
    EXPECT_NO_THROW((ChannelConfig{0.25, 0.5}.validate()));
}

TEST(Channel, AwgnStatistics) {
    CounterRng rng(42);
    const double sigma = 0.7;
    const int trials = 100000;
    double s[2] = {0, 0}, s2[2] = {0, 0};
    for (int t = 0; t < trials; ++t) {
        const RealVector y = awgn({0, 0}, sigma, rng);
        for (int i = 0; i < 2; ++i) {
            s[i] += y[i];
            s2[i] += y[i] * y[i];
        }
    }
    for (int i = 0; i < 2; ++i) {
        EXPECT_LT(std::fabs(s[i] / trials), 5 * sigma / std::sqrt(trials));
        EXPECT_NEAR(s2[i] / trials / (sigma * sigma), 1.0, 0.05);
    }
    CounterRng r2(1);
    const RealVector same = awgn({1.5, -2}, 1e-300, r2);
    EXPECT_DOUBLE_EQ(same[0], 1.5);
    EXPECT_DOUBLE_EQ(same[1], -2);
}

TEST(Decode, RoundsInIntegerLattice) {
    EXPECT_EQ(nearest_point(integer_lattice(2), {0.4, -0.6}), (IntVector{0, -1}));
    EXPECT_THROW(nearest_point(integer_lattice(2), {0.4}), Error);
    EXPECT_THROW(nearest_point(integer_lattice(17), RealVector(17, 0.0)), Error);
}

TEST(Decode, LatticePointsAreFixed) {
    const Lattice d4 = root_d(4);
    const auto basis = d4.real_basis();
    std::mt19937 gen(4);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int t = 0; t < 100; ++t) {
        IntVector u{c(gen), c(gen), c(gen), c(gen)};
        EXPECT_EQ(nearest_point(d4, to_real(basis, u)), u);
    }
}

TEST(Decode, BeatsRandomLatticePoints) {
    const auto basis = root_e8().real_basis();
    const ClosestPointSearcher s(basis);
    std::mt19937 gen(17);
    std::normal_distribution<double> g(0.0, 2.0);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int t = 0; t < 50; ++t) {
        RealVector y(8);
        for (auto& v : y) v = g(gen);
        const RealVector best = to_real(basis, s.nearest(y));
        const double d = dist2(best, y);
        for (int k = 0; k < 1000; ++k) {
            IntVector u(8);
            for (auto& v : u) v = c(gen);
            EXPECT_LE(d, dist2(to_real(basis, u), y) + 1e-12);
        }
    }
}

TEST(Simulation, NoiselessRecovery) {
    const std::vector<NestedPair> pairs = {integer_pair(1, 2), integer_pair(2, 3),
                                           build_nested_from_code(hamming(), NestingScheme::Zn),
                                           build_nested_from_code(hamming(), NestingScheme::TwoLambda),
                                           build_nested_from_code(code_4(), NestingScheme::TwoLambda)};
    for (const auto& p : pairs) {
        const ClosestPointSearcher s(p.real_basis());
        CounterRng rng(5);
        for (std::size_t m = 0; m < p.coset_count(); ++m) {
            const RealVector x = coset_encode(p, m, kRandomizerBox, rng);
            EXPECT_EQ(p.coset_of(s.nearest(x)), m);
        }
        const SimResult r = eve_decision_mc(p, {1e-7, 1e-6}, 2000, 11);
        EXPECT_EQ(r.correct, 2000);
        EXPECT_DOUBLE_EQ(r.p_hat, 1.0);
    }
}

TEST(Simulation, LargeNoiseErasesTheCoset) {
    const SimResult r = eve_decision_mc(integer_pair(1, 2), {1.0, 1e3}, 100000, 2);
    EXPECT_NEAR(r.p_hat, 0.5, 3 * r.ci95_halfwidth);
}

TEST(Simulation, AgreesWithQuadrature) {
    const SimResult r = eve_decision_mc(integer_pair(1, 2), {0.25, 0.5}, 100000, 20240601);
    EXPECT_NEAR(r.ci95_halfwidth, 1.96 * std::sqrt(r.p_hat * (1 - r.p_hat) / 100000), 1e-15);
    EXPECT_NEAR(r.p_hat, parity_oracle(0.5), 3 * r.ci95_halfwidth);
}

TEST(Simulation, IndependentOfThreadCount) {
    const NestedPair p = build_nested_from_code(hamming(), NestingScheme::Zn);
    const SimResult a = eve_decision_mc(p, {0.2, 0.5}, 5000, 77, kRandomizerBox, 1);
    const SimResult b = eve_decision_mc(p, {0.2, 0.5}, 5000, 77, kRandomizerBox, 4);
    EXPECT_EQ(a.correct, b.correct);
}

TEST(Simulation, ConfusionGrowsWithNoise) {
    const NestedPair p = build_nested_from_code(hamming(), NestingScheme::Zn);
    double last = 1.0, last_ci = 0.0;
    for (double s : {0.2, 0.4, 0.8, 1.6}) {
        const SimResult r = eve_decision_mc(p, {0.1, s}, 20000, 3);
        EXPECT_LE(r.p_hat, last + r.ci95_halfwidth + last_ci) << s;
        last = r.p_hat;
        last_ci = r.ci95_halfwidth;
    }
}

TEST(ThetaSum, MatchesJacobiProduct) {
    for (int n : {1, 2, 4}) {
        for (double sigma : {0.3, 0.6}) {
            // tau = i / (2 pi sigma^2); norm bound 40 leaves < 1e-25.
            const double y = 1.0 / (2 * std::numbers::pi * sigma * sigma);
            const double want = std::pow(jacobi_at_iy(Jacobi::Theta3, y), n);
            EXPECT_NEAR(coset_theta_sum(integer_lattice(n), sigma, 40), want, 1e-12 * want);
        }
    }
}

TEST(ThetaSum, TwoPathsAgreeOnTruncation) {
    // Enumerated sum versus the enumerated theta series evaluated as a q-series.
    for (const Lattice& l : {root_d(4), root_e8(), integer_lattice(3)}) {
        const Rational bound = 6;
        const QSeries s = theta_series_enum(l, bound);
        for (double sigma : {0.4, 0.8, 1.5}) {
            const double y = 1.0 / (2 * std::numbers::pi * sigma * sigma);
            const double a = coset_theta_sum(l, sigma, bound);
            EXPECT_NEAR(a, sum_terms_at_iy(s, y), 1e-13 * a);
        }
    }
}

TEST(ThetaSum, SmallSigmaLeavesOrigin) {
    EXPECT_NEAR(coset_theta_sum(root_e8(), 0.05, 8), 1.0, 1e-15);
}

TEST(ThetaSum, D8SquaredRatioAtI) {
    const auto catalog = load_catalog(default_catalog_path());
    const auto codes = load_codes(default_codes_path());
    const Lattice l = build_entry(find_entry(catalog, "(D8^2)+"), codes);
    const double sigma = 1.0 / std::sqrt(2 * std::numbers::pi);
    const double num = std::pow(jacobi_at_iy(Jacobi::Theta3, 1.0), 16);
    const double den = coset_theta_sum(l, sigma, 9);
    EXPECT_NEAR(num / den, 2.0, 1e-6);
}

TEST(ThetaSum, TailTooLarge) {
    const NestedPair p = integer_pair(2, 1);
    try {
        theta_approx_pce(p, {0.5, 3.0}, Rational(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TailTooLarge);
    }
    EXPECT_NO_THROW(theta_approx_pce(p, {0.5, 3.0}));
}

TEST(SecondMoment, IntegerLattices) {
    const SecondMoment z1 = second_moment_mc(integer_lattice(1), 20000, 1);
    EXPECT_NEAR(z1.value, 1.0 / 12, 3 * z1.std_error);
    const SecondMoment z2 = second_moment_mc(integer_lattice(2), 20000, 2);
    EXPECT_NEAR(z2.value, 1.0 / 6, 3 * z2.std_error);
    // cL has second moment c^{n+2} U(L).
    const SecondMoment s2 = second_moment_mc(scale(integer_lattice(2), {2, false}), 20000, 2);
    EXPECT_NEAR(s2.value / z2.value, 16.0, 3 * (s2.std_error / z2.value + 16 * z2.std_error / z2.value));
}

// The theta approximation is a large-noise expansion. Without the second
// moment it tracks the simulation from sigma = 1 upward; the first-order
// correction only helps once sigma is well above the cell size, and at
// sigma = 0.3 both forms are far off (the corrected one even goes negative
// in four dimensions).
TEST(Approximation, GapAgainstSimulation) {
    const std::vector<NestedPair> pairs = {integer_pair(1, 2), integer_pair(2, 2), integer_pair(4, 2),
                                           build_nested_from_code(code_2(), NestingScheme::Zn),
                                           build_nested_from_code(code_4(), NestingScheme::Zn)};
    for (const auto& p : pairs) {
        const double u = second_moment_mc(p.fine(), 20000, 8).value;
        for (double sigma : {0.3, 1.0, 2.0, 4.0}) {
            const SimResult r = eve_decision_mc(p, {sigma / 2, sigma}, 50000, 99);
            const double plain = theta_approx_pce(p, {sigma / 2, sigma});
            const double corrected = theta_approx_pce(p, {sigma / 2, sigma}, std::optional<double>(u));
            const double budget = std::max(3 * r.ci95_halfwidth, 0.02);
            const std::string where = "n=" + std::to_string(p.dimension()) + " sigma=" + std::to_string(sigma);
            if (sigma < 0.5) {
                EXPECT_GT(std::fabs(plain - r.p_hat), 0.1) << where;
                EXPECT_GT(std::fabs(corrected - r.p_hat), 0.1) << where;
                continue;
            }
            EXPECT_LE(std::fabs(plain - r.p_hat), budget) << where;
            if (sigma >= 2.0) EXPECT_LE(std::fabs(corrected - r.p_hat), budget) << where;
        }
    }
}
