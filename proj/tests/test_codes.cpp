#include <bit>
#include <fstream>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "seclat/catalog.hpp"
#include "seclat/codes.hpp"
#include "seclat/error.hpp"

using namespace seclat;

namespace {

BinaryCode hamming() {
    return BinaryCode(8, {parse_word("11110000"), parse_word("00111100"), parse_word("00001111"),
                          parse_word("01010101")},
                      "[8,4,4]");
}

bool integral_and_even_diagonal(const Lattice& l) {
    if (!is_integral(l)) return false;
    for (std::size_t i = 0; i < static_cast<std::size_t>(l.dimension()); ++i)
        if (!is_integer(l.gram()(i, i) / 2)) return false;
    return true;
}

// Self-orthogonal code: rows chosen one at a time among words of even weight
// orthogonal to everything picked so far.
BinaryCode random_self_orthogonal(int n, int k, std::mt19937& gen) {
    std::uniform_int_distribution<Word> word(0, (Word{1} << n) - 1);
    std::vector<Word> rows;
    for (int attempt = 0; attempt < 100000 && static_cast<int>(rows.size()) < k; ++attempt) {
        const Word w = word(gen);
        if (std::popcount(w) % 2 != 0 || w == 0) continue;
        bool ok = true;
        for (Word r : rows) ok = ok && std::popcount(w & r) % 2 == 0;
        if (!ok) continue;
        std::vector<Word> trial = rows;
        trial.push_back(w);
        try {
            BinaryCode c(n, trial);
            rows = trial;
        } catch (const Error&) {
        }
    }
    return BinaryCode(n, rows);
}

class ShippedCodes : public ::testing::Test {
protected:
    static void SetUpTestSuite() { codes_ = new std::vector<CodeRecord>(load_codes(default_codes_path())); }
    static std::vector<CodeRecord>* codes_;
};
std::vector<CodeRecord>* ShippedCodes::codes_ = nullptr;

}  // namespace

TEST(Codes, ParseAndPrintWords) {
    EXPECT_EQ(parse_word("101"), 5u);
    EXPECT_EQ(word_string(5, 4), "1010");
    EXPECT_THROW(parse_word("10x"), Error);
}

TEST(Codes, RepetitionCode) {
    const BinaryCode c(2, {parse_word("11")});
    EXPECT_EQ(weight_distribution(c), (std::vector<std::uint64_t>{1, 0, 1}));
    EXPECT_EQ(minimum_distance(c), 2);
    EXPECT_TRUE(is_self_dual(c));
    EXPECT_EQ(kissing_from_code(c), 4);
    EXPECT_EQ(kissing_number(construction_a(c)), 4);
}

TEST(Codes, OddRepetitionIsNotSelfDual) {
    const BinaryCode c(3, {parse_word("111")});
    EXPECT_FALSE(is_self_dual(c));
    EXPECT_FALSE(is_self_orthogonal(c));
    EXPECT_EQ(dual_code(c).dimension(), 2);
    EXPECT_TRUE(dual_code(dual_code(c)) == c);
}

TEST(Codes, FullSpaceGivesScaledIntegers) {
    const BinaryCode c(3, {parse_word("100"), parse_word("010"), parse_word("001")});
    const Lattice l = construction_a(c);
    EXPECT_EQ(det_lattice(l), Rational(1, 8));
    EXPECT_FALSE(is_unimodular(l));
}

TEST(Codes, DependentRowsRejected) {
    EXPECT_THROW(BinaryCode(4, {parse_word("1100"), parse_word("0011"), parse_word("1111")}), Error);
    EXPECT_THROW(BinaryCode(25, {}), Error);
    EXPECT_THROW(BinaryCode(3, {parse_word("1001")}), Error);
}

TEST(Codes, ExtendedHammingIsE8) {
    const BinaryCode c = hamming();
    EXPECT_EQ(weight_distribution(c), (std::vector<std::uint64_t>{1, 0, 0, 0, 14, 0, 0, 0, 1}));
    EXPECT_TRUE(is_self_dual(c));
    EXPECT_TRUE(is_doubly_even(c));
    EXPECT_TRUE(dual_code(c) == c);
    const Lattice l = construction_a(c);
    EXPECT_TRUE(is_even(l));
    EXPECT_EQ(kissing_number(l), 240);
    EXPECT_EQ(kissing_from_code(c), 240);
}

TEST(Codes, DualOfDualOnRandomCodes) {
    std::mt19937 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + trial % 10;
        std::uniform_int_distribution<Word> word(1, (Word{1} << n) - 1);
        std::vector<Word> rows;
        for (int i = 0; i < n / 2; ++i) {
            rows.push_back(word(gen));
            try {
                BinaryCode check(n, rows);
            } catch (const Error&) {
                rows.pop_back();
            }
        }
        const BinaryCode c(n, rows);
        const BinaryCode d = dual_code(c);
        EXPECT_EQ(d.dimension(), n - c.dimension());
        for (Word a : c.rows())
            for (Word b : d.rows()) EXPECT_EQ(std::popcount(a & b) % 2, 0);
        EXPECT_TRUE(dual_code(d) == c);
    }
}

TEST(Codes, ConstructionAEquivalencesOnRandomCodes) {
    std::mt19937 gen(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 15;
        const BinaryCode c = random_self_orthogonal(n, n / 2, gen);
        const Lattice l = construction_a(c);
        EXPECT_TRUE(is_self_orthogonal(c));
        EXPECT_TRUE(is_integral(l));
        EXPECT_EQ(is_doubly_even(c), integral_and_even_diagonal(l)) << trial;
        EXPECT_EQ(is_self_dual(c), is_unimodular(l)) << trial;
    }
    // Codes that are not self-orthogonal give non-integral lattices.
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 15;
        std::uniform_int_distribution<Word> word(1, (Word{1} << n) - 1);
        std::vector<Word> rows{word(gen)};
        if (n > 3) rows.push_back(word(gen));
        BinaryCode c(n, {rows[0]});
        try {
            c = BinaryCode(n, rows);
        } catch (const Error&) {
        }
        EXPECT_EQ(is_self_orthogonal(c), is_integral(construction_a(c))) << trial;
    }
}

TEST_F(ShippedCodes, Equivalences) {
    for (const auto& r : *codes_) {
        const Lattice l = construction_a(r.code);
        EXPECT_TRUE(is_self_dual(r.code)) << r.code.name();
        EXPECT_TRUE(is_unimodular(l)) << r.code.name();
        EXPECT_EQ(is_doubly_even(r.code), integral_and_even_diagonal(l)) << r.code.name();
        EXPECT_EQ(is_doubly_even(r.code), is_even(l)) << r.code.name();
    }
}

TEST_F(ShippedCodes, KissingFromCodeMatchesEnumeration) {
    for (const auto& r : *codes_) {
        EXPECT_EQ(kissing_from_code(r.code), kissing_number(construction_a(r.code))) << r.code.name();
    }
    EXPECT_EQ(kissing_from_code(find_code(*codes_, "[22,11,6]").code), 44);
    EXPECT_EQ(kissing_from_code(find_code(*codes_, "[20,10,4]_W4=5").code), 120);
    EXPECT_EQ(kissing_from_code(find_code(*codes_, "[18,9,4]_W4=9").code), 180);
}

TEST_F(ShippedCodes, WeightDistributionSymmetry) {
    for (const auto& r : *codes_) {
        const auto w = weight_distribution(r.code);
        const int n = r.code.length();
        std::uint64_t total = 0;
        for (int i = 0; i <= n; ++i) {
            total += w[i];
            EXPECT_EQ(w[i], w[n - i]) << r.code.name() << " weight " << i;
            if (i % 2) EXPECT_EQ(w[i], 0u);
        }
        EXPECT_EQ(total, std::uint64_t{1} << r.code.dimension());
        EXPECT_EQ(w, r.expected_weights);
    }
}

TEST_F(ShippedCodes, PrintedDistributions) {
    const auto w12 = weight_distribution(find_code(*codes_, "[12,6,4]").code);
    EXPECT_EQ(w12, (std::vector<std::uint64_t>{1, 0, 0, 0, 15, 0, 32, 0, 15, 0, 0, 0, 1}));
    const auto w22 = weight_distribution(find_code(*codes_, "[22,11,6]").code);
    EXPECT_EQ(w22[4], 0u);
    EXPECT_EQ(w22[6], 77u);
    EXPECT_EQ(w22[8], 330u);
    EXPECT_EQ(w22[10], 616u);
    EXPECT_FALSE(is_doubly_even(find_code(*codes_, "[12,6,4]").code));
}

TEST_F(ShippedCodes, ThetaPrefixFromCode) {
    // Norm-2 vectors of Gamma_C are +-2e_i and the 16 W(4) sign patterns on
    // weight-4 words; norm 3 comes only from weight-6 words.
    const auto& c = find_code(*codes_, "[22,11,6]").code;
    const auto a = theta_coeffs_enum(construction_a(c), 3);
    EXPECT_EQ(a[1], 0);
    EXPECT_EQ(a[2], 44);
    EXPECT_EQ(a[3], 64 * 77);
    const auto& c4 = find_code(*codes_, "[20,10,4]_W4=5").code;
    const auto b = theta_coeffs_enum(construction_a(c4), 2);
    EXPECT_EQ(b[1], 0);
    EXPECT_EQ(b[2], 2 * 20 + 16 * 5);
}

TEST(CodeFile, CorruptedDistributionRejected) {
    nlohmann::json j;
    std::ifstream(default_codes_path()) >> j;
    j[0]["expected_weights"][4] = 13;
    const std::string path = ::testing::TempDir() + "bad_codes.json";
    std::ofstream(path) << j.dump();
    try {
        load_codes(path);
        FAIL() << "expected InvariantViolation";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvariantViolation);
        EXPECT_NE(std::string(e.what()).find("[8,4,4]"), std::string::npos);
    }
    std::ofstream(path) << "{";
    EXPECT_THROW(load_codes(path), Error);
}
