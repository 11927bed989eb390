#ifndef SECLAT_TABLES_HPP
#define SECLAT_TABLES_HPP

#include <ostream>
#include <string>
#include <vector>

#include "seclat/catalog.hpp"
#include "seclat/codes.hpp"

namespace seclat {

struct TableLine {
    int table = 0;
    std::string label;
    Rational expected;
    Rational computed;
    bool ok = false;
    std::string note;  // reason for a failure, empty otherwise
};

/// Recomputes every tabulated quantity:
/// 1: gains of the extremal rows from their theta prefix (and, when a recipe
///    exists, from enumerated theta coefficients);
/// 2: closed-form gains from (n, K), with K enumerated when a recipe exists;
/// 3: kissing numbers of the Construction-A lattices against 2n + 16 W(4);
/// 4: the best lattice per dimension 9..23 against the listed winners.
std::vector<TableLine> verify_tables(const std::vector<CatalogEntry>& catalog, const std::vector<CodeRecord>& codes);

/// "TABLE<k> <label> expected=<p/q> computed=<p/q> status=OK|FAIL".
std::string format_line(const TableLine& l);

}  // namespace seclat

#endif
