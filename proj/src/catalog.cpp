#include "seclat/catalog.hpp"

#include <fstream>

#include <json.hpp>

#include "seclat/error.hpp"
#include "seclat/root_lattices.hpp"
#include "seclat/secrecy.hpp"

namespace seclat {

namespace {

Rational json_rational(const nlohmann::json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    return parse_rational(v.get<std::string>());
}

CatalogEntry parse_entry(const nlohmann::json& item) {
    CatalogEntry e;
    e.dimension = item.at("dim").get<int>();
    e.label = item.at("label").get<std::string>();
    e.kissing = item.at("kissing").get<std::int64_t>();
    e.gain = json_rational(item.at("gain"));
    e.extremal = item.value("extremal", false);
    e.tables = item.value("tables", std::vector<std::string>{});
    if (item.contains("hecke"))
        for (const auto& a : item.at("hecke")) e.hecke.emplace_back(a.get<long>());
    e.best_for = item.value("best_for", std::vector<int>{});
    e.code = item.value("code", std::string{});
    if (item.contains("recipe")) {
        const auto& r = item.at("recipe");
        if (r.contains("construction_a")) {
            e.construction_a_code = r.at("construction_a").get<std::string>();
        } else {
            GlueData g;
            g.components = r.at("base").get<std::vector<std::string>>();
            for (const auto& row : r.at("glue")) {
                RationalVector v;
                for (const auto& x : row) v.push_back(json_rational(x));
                g.glue_vectors.push_back(std::move(v));
            }
            e.glue = std::move(g);
        }
    }
    return e;
}

void validate(const CatalogEntry& e) {
    const std::string row = "row " + std::to_string(e.dimension) + " " + e.label;
    if (e.dimension < 1) throw Error(ErrorKind::InvariantViolation, row + ": bad dimension");
    if (e.gain <= 0) throw Error(ErrorKind::InvariantViolation, row + ": gain must be positive");
    if (!e.extremal && e.dimension >= 16 && e.dimension <= 23) {
        if (e.kissing <= 0) throw Error(ErrorKind::InvariantViolation, row + ": kissing number must be positive");
        const Rational g = gain_closed_form(e.dimension, e.kissing).gain;
        if (g != e.gain)
            throw Error(ErrorKind::InvariantViolation,
                        row + ": gain " + fraction_string(e.gain) + " but closed form gives " + fraction_string(g));
    }
    if (!e.hecke.empty()) {
        const Rational g = gain_from_decomposition({e.dimension, e.hecke});
        if (g != e.gain)
            throw Error(ErrorKind::InvariantViolation,
                        row + ": gain " + fraction_string(e.gain) + " but theta coefficients give " + fraction_string(g));
    }
}

}  // namespace

std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
    if (!doc.is_array()) throw Error(ErrorKind::ParseError, path + ": expected an array of entries");
    std::vector<CatalogEntry> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        try {
            out.push_back(parse_entry(doc[i]));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError, path + ": entry " + std::to_string(i) + ": " + e.what());
        }
        validate(out.back());
    }
    return out;
}

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog, const std::string& label) {
    for (const auto& e : catalog)
        if (e.label == label) return e;
    throw Error(ErrorKind::UnknownName, "no catalog lattice labelled '" + label + "'");
}

Lattice build_entry(const CatalogEntry& e, const std::vector<CodeRecord>& codes) {
    if (e.glue) {
        const Lattice base = direct_sum_of(e.glue->components);
        return build_glue({base, e.glue->glue_vectors, true}).with_label(e.label);
    }
    if (!e.construction_a_code.empty())
        return construction_a(find_code(codes, e.construction_a_code).code).with_label(e.label);
    throw Error(ErrorKind::NoRecipe, e.label + " has no construction in the catalog");
}

std::string default_catalog_path() { return std::string(SECLAT_DATA_DIR) + "/tables.json"; }
std::string default_codes_path() { return std::string(SECLAT_DATA_DIR) + "/codes.json"; }

}  // namespace seclat
