#include "seclat/cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>

#include <CLI11.hpp>

#include "seclat/catalog.hpp"
#include "seclat/codes.hpp"
#include "seclat/error.hpp"
#include "seclat/root_lattices.hpp"
#include "seclat/secrecy.hpp"
#include "seclat/tables.hpp"
#include "seclat/wiretap.hpp"

namespace seclat {

namespace {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct Paths {
    std::string catalog = default_catalog_path();
    std::string codes = default_codes_path();
};

// Catalog label first, then a component name such as "Z^5" or "D12".
Lattice resolve_lattice(const std::string& name, const Paths& paths) {
    const auto catalog = load_catalog(paths.catalog);
    for (const auto& e : catalog)
        if (e.label == name) return build_entry(e, load_codes(paths.codes));
    return lattice_from_component(name);
}

HeckeDecomposition resolve_decomposition(const std::string& name, const Paths& paths) {
    const auto catalog = load_catalog(paths.catalog);
    for (const auto& e : catalog) {
        if (e.label != name) continue;
        if (!e.hecke.empty()) return {e.dimension, e.hecke};
        if (e.has_recipe()) {
            const Lattice l = build_entry(e, load_codes(paths.codes));
            return hecke_decompose(e.dimension, theta_coeffs_enum(l, e.dimension / 8));
        }
        // No norm-1 vectors: the prefix is (1, 0, K) for 16 <= n <= 23.
        if (e.dimension >= 16 && e.dimension <= 23)
            return hecke_decompose(e.dimension, std::vector<BigInt>{1, 0, BigInt(static_cast<long>(e.kissing))});
        throw Error(ErrorKind::NoRecipe, e.label + " has neither a construction nor theta coefficients");
    }
    const Lattice l = lattice_from_component(name);
    return hecke_decompose(l.dimension(), theta_coeffs_enum(l, l.dimension() / 8));
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("--sigma-e", "bad number '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Secrecy gains of unimodular lattices and wiretap lattice codes", "seclat"};
    app.require_subcommand(1);
    Paths paths;

    auto* theta = app.add_subcommand("theta", "Theta series of a lattice");
    std::string theta_lattice;
    std::int64_t theta_order = 10;
    bool theta_dump = false;
    theta->add_option("--lattice", theta_lattice, "Catalog label or component (Z, Z^k, An, Dn, E6, E7, E8)")->required();
    theta->add_option("--order", theta_order, "Number of q-powers")->check(CLI::Range(1, 1000));
    theta->add_flag("--dump", theta_dump, "One exponent/4 : coefficient line per term");
    theta->add_option("--catalog", paths.catalog);
    theta->add_option("--codes", paths.codes);

    auto* gain = app.add_subcommand("gain", "Exact secrecy gain");
    int gain_dim = 0;
    std::optional<std::int64_t> gain_kissing;
    std::vector<std::string> gain_theta;
    bool show_decomposition = false;
    gain->add_option("--dim", gain_dim, "Dimension")->required()->check(CLI::PositiveNumber);
    auto* kiss_opt = gain->add_option("--kissing", gain_kissing, "Kissing number (closed form)");
    auto* theta_opt = gain->add_option("--theta", gain_theta, "Theta coefficients A_0,A_1,...")->delimiter(',');
    kiss_opt->excludes(theta_opt);
    gain->add_flag("--show-decomposition", show_decomposition, "Also print a_r");

    auto* classify = app.add_subcommand("classify", "Best unimodular lattices of a dimension");
    int classify_dim = 0;
    classify->add_option("--dim", classify_dim)->required()->check(CLI::Range(9, 23));
    classify->add_option("--catalog", paths.catalog);

    auto* verify = app.add_subcommand("verify-tables", "Recompute the tabulated gains, kissing numbers and winners");
    verify->add_option("--catalog", paths.catalog);
    verify->add_option("--codes", paths.codes);

    auto* plot = app.add_subcommand("plot-data", "Secrecy function samples as CSV");
    std::string plot_lattice;
    double plot_db = 6.0;
    int plot_points = 121;
    bool fig3 = false;
    plot->add_option("--lattice", plot_lattice, "Catalog label or component");
    plot->add_option("--db-range", plot_db, "Half-width of the dB grid")->check(CLI::PositiveNumber);
    plot->add_option("--points", plot_points)->check(CLI::Range(2, 100000));
    plot->add_flag("--fig3", fig3, "Gain against dimension for every tabulated lattice");
    plot->add_option("--catalog", paths.catalog);
    plot->add_option("--codes", paths.codes);

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo estimate of Eve's correct-decision probability");
    std::string sim_code, sim_scheme = "zn", sigma_list;
    int sim_integer = 0, sim_modulus = 2, sim_box = kRandomizerBox, sm_samples = 0;
    std::optional<double> sim_sigma_b;
    std::int64_t sim_trials = 10000;
    std::uint64_t sim_seed = 0;
    unsigned sim_threads = 0;
    auto* code_opt = sim->add_option("--code", sim_code, "Self-dual code name");
    auto* int_opt = sim->add_option("--integer", sim_integer, "Use aZ^n inside Z^n with this n")->check(CLI::Range(1, 16));
    code_opt->excludes(int_opt);
    sim->add_option("--scheme", sim_scheme, "zn or 2lambda")->check(CLI::IsMember({"zn", "2lambda"}));
    sim->add_option("--modulus", sim_modulus, "a for the integer pair")->check(CLI::Range(2, 64));
    sim->add_option("--sigma-e", sigma_list, "Comma-separated noise levels")->required();
    sim->add_option("--sigma-b", sim_sigma_b, "Bob's noise (default sigma_e / 2)");
    sim->add_option("--trials", sim_trials)->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    sim->add_option("--seed", sim_seed)->required();
    sim->add_option("--box", sim_box, "Randomizer range in coarse coordinates")->check(CLI::Range(0, 1000));
    sim->add_option("--threads", sim_threads, "Worker threads (0 = all cores)");
    sim->add_option("--second-moment-samples", sm_samples, "Include the second-moment correction")
        ->check(CLI::Range(0, 100000000));
    sim->add_option("--codes", paths.codes);

    auto* cona = app.add_subcommand("construct-a", "Construction-A lattice of a code");
    std::string cona_code;
    cona->add_option("--code", cona_code)->required();
    cona->add_option("--codes", paths.codes);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << "run with --help for usage\n";
        return 2;
    }

    try {
        if (*theta) {
            const Lattice l = resolve_lattice(theta_lattice, paths);
            const QSeries s = theta_series_enum(l, Rational(4 * theta_order - 1, 4));
            out << (theta_dump ? s.dump() : s.to_string() + "\n");
        } else if (*gain) {
            if (gain_kissing) {
                const auto g = gain_closed_form(gain_dim, *gain_kissing);
                if (g.advisory) err << "warning: closed form is stated for dimensions 16..23 only\n";
                out << fraction_string(g.gain) << "\n";
            } else if (!gain_theta.empty()) {
                std::vector<Rational> coeffs;
                for (const auto& s : gain_theta) coeffs.push_back(parse_rational(s));
                const auto d = hecke_decompose(gain_dim, coeffs);
                out << fraction_string(gain_from_decomposition(d)) << "\n";
                if (show_decomposition) {
                    out << "a =";
                    for (const auto& a : d.a) out << " " << a.get_str();
                    out << "\n";
                }
            } else {
                err << "error: gain needs --kissing or --theta\n";
                return 2;
            }
        } else if (*classify) {
            const auto catalog = load_catalog(paths.catalog);
            for (const auto& b : classify_best(catalog, classify_dim))
                out << classify_dim << " " << b.label << " " << fraction_string(b.gain) << "\n";
        } else if (*verify) {
            const auto lines = verify_tables(load_catalog(paths.catalog), load_codes(paths.codes));
            int fails = 0;
            for (const auto& l : lines) {
                out << format_line(l) << "\n";
                if (!l.ok) {
                    ++fails;
                    if (!l.note.empty()) err << "TABLE" << l.table << " " << l.label << ": " << l.note << "\n";
                }
            }
            return fails == 0 ? 0 : 1;
        } else if (*plot) {
            if (fig3) {
                out << "dim,label,kissing,gain,gain_decimal\n";
                for (const auto& e : load_catalog(paths.catalog)) {
                    if (e.tables.empty()) continue;
                    out << e.dimension << "," << e.label << "," << e.kissing << "," << fraction_string(e.gain) << ","
                        << num(e.gain.get_d()) << "\n";
                }
                return 0;
            }
            if (plot_lattice.empty()) {
                err << "error: plot-data needs --lattice or --fig3\n";
                return 2;
            }
            const auto theta_fn = ThetaFunction::from_decomposition(resolve_decomposition(plot_lattice, paths));
            out << "y_db,xi\n";
            for (int i = 0; i < plot_points; ++i) {
                const double db = -plot_db + 2.0 * plot_db * i / (plot_points - 1);
                out << num(db) << "," << num(secrecy_function(theta_fn, 1.0, std::pow(10.0, db / 10.0))) << "\n";
            }
        } else if (*sim) {
            std::optional<NestedPair> pair;
            if (sim_integer > 0) {
                pair = integer_pair(sim_integer, sim_modulus);
            } else if (!sim_code.empty()) {
                pair = build_nested_from_code(find_code(load_codes(paths.codes), sim_code).code,
                                              parse_scheme(sim_scheme));
            } else {
                err << "error: simulate needs --code or --integer\n";
                return 2;
            }
            std::optional<double> moment;
            if (sm_samples > 0) moment = second_moment_mc(pair->fine(), sm_samples, sim_seed).value;
            const std::string scheme = sim_integer > 0 ? "integer" : sim_scheme;
            out << "scheme,n,sigma_e,trials,seed,p_hat,ci95,theta_approx\n";
            for (double s : parse_list(sigma_list)) {
                const ChannelConfig cfg{sim_sigma_b.value_or(s / 2), s};
                const SimResult r = eve_decision_mc(*pair, cfg, sim_trials, sim_seed, sim_box, sim_threads);
                std::string approx = "nan";
                try {
                    approx = num(theta_approx_pce(*pair, cfg, moment));
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::TailTooLarge) throw;
                    err << "warning: sigma_e=" << num(s) << ": " << e.what() << "\n";
                }
                out << scheme << "," << pair->dimension() << "," << num(s) << "," << r.trials << "," << sim_seed << ","
                    << num(r.p_hat) << "," << num(r.ci95_halfwidth) << "," << approx << "\n";
            }
        } else if (*cona) {
            const auto codes = load_codes(paths.codes);
            const BinaryCode& c = find_code(codes, cona_code).code;
            const Lattice l = construction_a(c);
            const auto w = weight_distribution(c);
            out << "code=" << c.name() << "\n";
            out << "n=" << c.length() << " k=" << c.dimension() << " d=" << minimum_distance(c) << "\n";
            out << "weights=";
            for (std::size_t i = 0; i < w.size(); ++i) out << (i ? "," : "") << w[i];
            out << "\n";
            out << "self_dual=" << is_self_dual(c) << " doubly_even=" << is_doubly_even(c) << "\n";
            out << "det=" << fraction_string(det_lattice(l)) << " integral=" << is_integral(l)
                << " unimodular=" << is_unimodular(l) << " even=" << is_even(l) << "\n";
            out << "kissing_from_code=" << kissing_from_code(c) << "\n";
            if (is_integral(l)) out << "kissing_enumerated=" << kissing_number(l) << "\n";
            out << "gram=\n";
            const auto& g = l.gram();
            for (std::size_t i = 0; i < g.rows(); ++i) {
                for (std::size_t j = 0; j < g.cols(); ++j) out << (j ? " " : "") << g(i, j).get_str();
                out << "\n";
            }
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace seclat
