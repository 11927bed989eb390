#include "seclat/rational.hpp"

#include <limits>
#include <string>

#include "seclat/error.hpp"

namespace seclat {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::SearchTooLarge: return "SearchTooLarge";
        case ErrorKind::NotIntegral: return "NotIntegral";
        case ErrorKind::GlueNotClosed: return "GlueNotClosed";
        case ErrorKind::IndexMismatch: return "IndexMismatch";
        case ErrorKind::IncompatibleScale: return "IncompatibleScale";
        case ErrorKind::NoRecipe: return "NoRecipe";
        case ErrorKind::UnknownName: return "UnknownName";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::NonIntegerSolution: return "NonIntegerSolution";
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::EmptyDimension: return "EmptyDimension";
        case ErrorKind::BadIndex: return "BadIndex";
        case ErrorKind::TailTooLarge: return "TailTooLarge";
        case ErrorKind::NotSelfDual: return "NotSelfDual";
        case ErrorKind::NotNested: return "NotNested";
    }
    return "Unknown";
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.back() == ' ') s.pop_back();
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
    const auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
        if (part.empty()) throw Error(ErrorKind::ParseError, "malformed rational '" + s + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw Error(ErrorKind::ParseError, "malformed rational '" + s + "'");
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') {
                throw Error(ErrorKind::ParseError, "malformed rational '" + s + "'");
            }
        }
        return BigInt(part[0] == '+' ? part.substr(1) : part);
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string fraction_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

std::int64_t to_int64(const BigInt& z) {
    if (!z.fits_slong_p()) throw Error(ErrorKind::InvalidArgument, "integer " + z.get_str() + " out of range");
    return z.get_si();
}

std::int64_t to_int64(const Rational& r) {
    if (!is_integer(r)) throw Error(ErrorKind::InvalidArgument, fraction_string(r) + " is not an integer");
    return to_int64(r.get_num());
}

bool rational_sqrt(const Rational& r, Rational& root) {
    if (r < 0) return false;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return false;
    BigInt n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    root = Rational(n, d);
    return true;
}

}  // namespace seclat
