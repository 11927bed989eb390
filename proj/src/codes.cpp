#include "seclat/codes.hpp"

#include <bit>
#include <fstream>

#include <json.hpp>

#include "seclat/error.hpp"

namespace seclat {

namespace {

int parity(Word w) { return std::popcount(w) & 1; }

}  // namespace

BinaryCode::BinaryCode(int n, std::vector<Word> rows, std::string name) : n_(n), name_(std::move(name)) {
    if (n < 1 || n > kMaxCodeLength) throw Error(ErrorKind::InvalidArgument, "code length must be in 1..24");
    const Word mask = (Word{1} << n) - 1;
    for (Word r : rows)
        if (r & ~mask) throw Error(ErrorKind::InvalidArgument, "generator row has bits beyond the code length");

    std::size_t next = 0;
    for (int col = 0; col < n && next < rows.size(); ++col) {
        const Word bit = Word{1} << col;
        std::size_t p = next;
        while (p < rows.size() && !(rows[p] & bit)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[next]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != next && (rows[i] & bit)) rows[i] ^= rows[next];
        pivots_.push_back(col);
        ++next;
    }
    if (next != rows.size()) throw Error(ErrorKind::InvalidArgument, "generator rows are linearly dependent");
    rows_ = std::move(rows);
}

bool BinaryCode::contains(Word w) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (w & (Word{1} << pivots_[i])) w ^= rows_[i];
    return w == 0;
}

Word parse_word(const std::string& bits) {
    if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxCodeLength))
        throw Error(ErrorKind::ParseError, "codeword '" + bits + "' has bad length");
    Word w = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] == '1')
            w |= Word{1} << j;
        else if (bits[j] != '0')
            throw Error(ErrorKind::ParseError, "codeword '" + bits + "' is not a bit string");
    }
    return w;
}

std::string word_string(Word w, int n) {
    std::string s(n, '0');
    for (int j = 0; j < n; ++j)
        if (w >> j & 1) s[j] = '1';
    return s;
}

std::vector<std::uint64_t> weight_distribution(const BinaryCode& c) {
    const int k = c.dimension();
    if (k > kMaxCodeLength) throw Error(ErrorKind::TooLarge, "2^k codewords exceed the enumeration limit");
    std::vector<std::uint64_t> w(c.length() + 1, 0);
    // Gray-code walk: consecutive codewords differ by one generator row.
    Word word = 0;
    w[0] = 1;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
        word ^= c.rows()[std::countr_zero(i)];
        ++w[std::popcount(word)];
    }
    return w;
}

int minimum_distance(const BinaryCode& c) {
    const auto w = weight_distribution(c);
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i]) return static_cast<int>(i);
    return 0;
}

BinaryCode dual_code(const BinaryCode& c) {
    const int n = c.length();
    std::vector<bool> is_pivot(n, false);
    for (int p : c.pivots()) is_pivot[p] = true;
    std::vector<Word> rows;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Word w = Word{1} << f;
        for (std::size_t i = 0; i < c.rows().size(); ++i)
            if (c.rows()[i] >> f & 1) w |= Word{1} << c.pivots()[i];
        rows.push_back(w);
    }
    return BinaryCode(n, std::move(rows), c.name().empty() ? "" : c.name() + "^perp");
}

bool is_self_orthogonal(const BinaryCode& c) {
    for (Word a : c.rows())
        for (Word b : c.rows())
            if (parity(a & b)) return false;
    return true;
}

bool is_self_dual(const BinaryCode& c) { return 2 * c.dimension() == c.length() && is_self_orthogonal(c); }

bool is_doubly_even(const BinaryCode& c) {
    const auto w = weight_distribution(c);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] && i % 4 != 0) return false;
    return true;
}

Lattice construction_a(const BinaryCode& c) {
    const int n = c.length();
    RationalMatrix m(n, n);
    std::size_t r = 0;
    for (Word w : c.rows()) {
        for (int j = 0; j < n; ++j)
            if (w >> j & 1) m(r, j) = 1;
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (int p : c.pivots()) is_pivot[p] = true;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) m(r++, j) = 2;
    return Lattice(std::move(m), Rational(1, 2), c.name().empty() ? "" : "Gamma(" + c.name() + ")");
}

std::int64_t kissing_from_code(const BinaryCode& c) {
    const auto w = weight_distribution(c);
    const int d = minimum_distance(c);
    const std::int64_t n = c.length();
    if (d == 0) return 2 * n;
    if (d < 4) return (std::int64_t{1} << d) * static_cast<std::int64_t>(w[d]);
    if (d == 4) return 2 * n + 16 * static_cast<std::int64_t>(w[4]);
    return 2 * n;
}

std::vector<CodeRecord> load_codes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
    if (!doc.is_array()) throw Error(ErrorKind::ParseError, path + ": expected an array of codes");

    std::vector<CodeRecord> out;
    for (const auto& item : doc) {
        std::string name = "?";
        try {
            name = item.at("name").get<std::string>();
            const int n = item.at("n").get<int>();
            const int k = item.at("k").get<int>();
            std::vector<Word> rows;
            for (const auto& s : item.at("generator_rows")) {
                const auto bits = s.get<std::string>();
                if (static_cast<int>(bits.size()) != n)
                    throw Error(ErrorKind::ParseError, "generator row length differs from n");
                rows.push_back(parse_word(bits));
            }
            CodeRecord rec{BinaryCode(n, std::move(rows), name), item.at("d").get<int>(),
                           item.at("expected_weights").get<std::vector<std::uint64_t>>(),
                           item.value("multiplicity", 1), item.value("tables", std::vector<std::string>{})};
            if (rec.code.dimension() != k)
                throw Error(ErrorKind::InvariantViolation, "code " + name + ": generator rank differs from k");
            if (weight_distribution(rec.code) != rec.expected_weights)
                throw Error(ErrorKind::InvariantViolation, "code " + name + ": weight distribution differs from table");
            if (minimum_distance(rec.code) != rec.min_distance)
                throw Error(ErrorKind::InvariantViolation, "code " + name + ": minimum distance differs from d");
            out.push_back(std::move(rec));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError, path + ": code " + name + ": " + e.what());
        }
    }
    return out;
}

const CodeRecord& find_code(const std::vector<CodeRecord>& codes, const std::string& name) {
    for (const auto& c : codes)
        if (c.code.name() == name) return c;
    throw Error(ErrorKind::UnknownName, "no code named '" + name + "'");
}

}  // namespace seclat
