#ifndef SECLAT_CODES_HPP
#define SECLAT_CODES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "seclat/lattice.hpp"

namespace seclat {

/// Codeword over F_2; bit j is coordinate j.
using Word = std::uint32_t;

constexpr int kMaxCodeLength = 24;

/// Binary linear [n,k] code held as a reduced row-echelon generator (pivots
/// ascending, each pivot column cleared in the other rows).
class BinaryCode {
public:
    /// Rows are reduced on entry. Throws InvalidArgument for dependent rows,
    /// bits beyond n, or n outside 1..24.
    BinaryCode(int n, std::vector<Word> rows, std::string name = {});

    int length() const { return n_; }
    int dimension() const { return static_cast<int>(rows_.size()); }
    const std::vector<Word>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }
    const std::string& name() const { return name_; }

    bool contains(Word w) const;
    /// Row space equality.
    bool operator==(const BinaryCode& other) const { return n_ == other.n_ && rows_ == other.rows_; }

private:
    int n_;
    std::vector<Word> rows_;
    std::vector<int> pivots_;
    std::string name_;
};

/// "0110..." with character j giving coordinate j. Throws ParseError.
Word parse_word(const std::string& bits);
std::string word_string(Word w, int n);

/// W(0..n) by enumerating all 2^k codewords.
std::vector<std::uint64_t> weight_distribution(const BinaryCode& c);
/// Smallest nonzero weight; 0 for the zero code.
int minimum_distance(const BinaryCode& c);

BinaryCode dual_code(const BinaryCode& c);
bool is_self_orthogonal(const BinaryCode& c);
bool is_self_dual(const BinaryCode& c);
bool is_doubly_even(const BinaryCode& c);

/// (1/sqrt 2) rho^{-1}(C): lifted generator rows plus 2 e_j for every
/// non-pivot column, with norm multiplier 1/2.
Lattice construction_a(const BinaryCode& c);

/// Kissing number of the Construction-A lattice predicted from W_C:
/// 2^d W(d) for d < 4, 2n + 16 W(4) for d = 4, 2n for d > 4.
std::int64_t kissing_from_code(const BinaryCode& c);

struct CodeRecord {
    BinaryCode code;
    int min_distance = 0;
    std::vector<std::uint64_t> expected_weights;
    int multiplicity = 1;
    std::vector<std::string> tables;
};

/// Reads the code data file and checks k, d and the weight distribution of
/// every entry against its recorded values (InvariantViolation naming the code).
std::vector<CodeRecord> load_codes(const std::string& path);

const CodeRecord& find_code(const std::vector<CodeRecord>& codes, const std::string& name);

}  // namespace seclat

#endif
