#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "seclat/error.hpp"
#include "seclat/qseries.hpp"

using namespace seclat;

namespace {

// Number of x in Z^k with |x|^2 = m, by direct counting.
std::vector<long> count_zk(int k, int max_norm) {
    std::vector<long> counts(max_norm + 1, 0);
    const int r = static_cast<int>(std::sqrt(max_norm)) + 1;
    std::vector<int> x(k, -r);
    while (true) {
        int norm = 0;
        for (int v : x) norm += v * v;
        if (norm <= max_norm) ++counts[norm];
        int i = 0;
        while (i < k && ++x[i] > r) x[i++] = -r;
        if (i == k) break;
    }
    return counts;
}

}  // namespace

TEST(QSeries, Theta3MatchesIntegerLattice) {
    EXPECT_EQ(theta3(40).to_string(), "1 + 2q + 2q^4 + 2q^9");
}

TEST(QSeries, Theta2HasQuarterExponents) {
    const QSeries t2 = theta2(40);
    EXPECT_EQ(t2.coeff(1), 2);
    EXPECT_EQ(t2.coeff(9), 2);
    EXPECT_EQ(t2.coeff(25), 2);
    EXPECT_EQ(t2.coeff(4), 0);
    EXPECT_EQ(t2.to_string(), "2q^(1/4) + 2q^(9/4) + 2q^(25/4)");
}

TEST(QSeries, Theta4AlternatesSigns) {
    EXPECT_EQ(theta4(40).to_string(), "1 - 2q + 2q^4 - 2q^9");
}

TEST(QSeries, PowersOfTheta3CountIntegerVectors) {
    for (int k = 1; k <= 4; ++k) {
        const auto brute = count_zk(k, 10);
        const QSeries s = pow(theta3(44), k);
        for (int m = 0; m <= 10; ++m) EXPECT_EQ(s.q_coeff(m), brute[m]) << "k=" << k << " m=" << m;
    }
}

TEST(QSeries, DiscriminantLeadingTerms) {
    const QSeries d = discriminant_delta8(40);
    const long printed[] = {0, 1, -8, 28, -64, 126};
    for (int m = 0; m <= 5; ++m) EXPECT_EQ(d.q_coeff(m), printed[m]) << m;
    EXPECT_EQ(d.q_coeff(6), -224);
}

TEST(QSeries, DiscriminantThetaAndProductFormsAgree) {
    EXPECT_EQ(discriminant_delta8(240), discriminant_delta8_product(240));
}

TEST(QSeries, JacobiQuarticIdentity) {
    const std::int64_t n = 200;
    EXPECT_EQ(pow(theta3(n), 4), pow(theta2(n), 4) + pow(theta4(n), 4));
}

TEST(QSeries, CoefficientBeyondOrderThrows) {
    const QSeries s = theta3(12);
    EXPECT_NO_THROW(s.coeff(11));
    try {
        s.coeff(12);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TruncationInsufficient);
    }
}

TEST(QSeries, ProductTruncatesToSmallerOrder) {
    const QSeries a = theta3(20), b = theta3(12);
    EXPECT_EQ(mul(a, b).trunc_order(), 12);
    EXPECT_EQ(pow(a, 0), QSeries::constant(1, 20));
}

TEST(QSeries, DumpFormat) {
    EXPECT_EQ(theta3(8).dump(), "0/4 : 1/1\n4/4 : 2/1\n");
}

TEST(QSeries, EvaluationMatchesClosedForm) {
    // theta_3(i) = pi^{1/4} / Gamma(3/4).
    const double exact = std::pow(std::numbers::pi, 0.25) / std::tgamma(0.75);
    EXPECT_NEAR(eval_at_iy(theta3(400), 1.0), exact, 1e-14);
    EXPECT_NEAR(jacobi_at_iy(Jacobi::Theta3, 1.0), exact, 1e-14);
}

TEST(QSeries, JacobiValuesAtI) {
    const double t2 = eval_at_iy(theta2(400), 1.0);
    const double t3 = eval_at_iy(theta3(400), 1.0);
    const double t4 = eval_at_iy(theta4(400), 1.0);
    EXPECT_LT(std::fabs(t2 - t4), 1e-9);
    EXPECT_LT(std::fabs(t3 - std::pow(2.0, 0.25) * t4), 1e-9);
}

TEST(QSeries, ShortSeriesRefusesSmallY) {
    try {
        eval_at_iy(theta3(16), 0.05);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TruncationInsufficient);
    }
}

TEST(QSeries, TailBoundDominatesOmittedTerms) {
    for (double y : {0.3, 1.0, 3.0}) {
        const QSeries full = pow(theta3(2000), 8);
        const QSeries cut = full.truncated(60);
        const double omitted = sum_terms_at_iy(full, y) - sum_terms_at_iy(cut, y);
        EXPECT_GE(tail_bound_at_iy(cut, y), omitted * 0.999) << y;
    }
}
