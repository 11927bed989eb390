#ifndef SECLAT_CATALOG_HPP
#define SECLAT_CATALOG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seclat/codes.hpp"
#include "seclat/lattice.hpp"

namespace seclat {

struct GlueData {
    std::vector<std::string> components;
    std::vector<RationalVector> glue_vectors;
};

struct CatalogEntry {
    int dimension = 0;
    std::string label;
    std::int64_t kissing = 0;
    Rational gain;
    bool extremal = false;
    std::vector<std::string> tables;       // "I", "II"
    std::vector<BigInt> hecke;              // a_0.. when the theta series is listed
    std::vector<int> best_for;              // dimensions where this lattice (plus Z^k) is best
    std::string code;                       // corresponding code name, if any
    std::optional<GlueData> glue;
    std::string construction_a_code;        // alternative recipe

    bool has_recipe() const { return glue.has_value() || !construction_a_code.empty(); }
};

/// Reads the lattice catalog. Every non-extremal row of dimension 16..23 must
/// have positive kissing number and a gain equal to the closed form, and every
/// row with listed theta coefficients must have the matching gain; otherwise
/// InvariantViolation naming the row.
std::vector<CatalogEntry> load_catalog(const std::string& path);

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog, const std::string& label);

/// Builds the lattice from its recipe. Construction-A recipes look the code up
/// in `codes`. Throws NoRecipe for formula-only rows.
Lattice build_entry(const CatalogEntry& e, const std::vector<CodeRecord>& codes);

std::string default_catalog_path();
std::string default_codes_path();

}  // namespace seclat

#endif
