#ifndef SECLAT_LATTICE_HPP
#define SECLAT_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seclat/matrix.hpp"
#include "seclat/qseries.hpp"
#include "seclat/rational.hpp"

namespace seclat {

/// A full-rank lattice in its own span, given by basis rows M (rank x ambient,
/// rank <= ambient) and a rational norm multiplier s: the lattice vectors are
/// sqrt(s) * (u M) for integer u. Keeping sqrt(s) symbolic lets the 1/sqrt(2)
/// of Construction A stay exact, since it only ever enters norms as s = 1/2.
class Lattice {
public:
    Lattice(RationalMatrix basis, Rational norm_scale = 1, std::string label = {});

    int dimension() const { return static_cast<int>(basis_.rows()); }
    int ambient_dimension() const { return static_cast<int>(basis_.cols()); }
    const RationalMatrix& basis() const { return basis_; }
    const Rational& norm_scale() const { return norm_scale_; }
    const std::string& label() const { return label_; }
    Lattice with_label(std::string label) const;

    /// A = s * M M^T.
    const RationalMatrix& gram() const { return gram_; }

    /// Real n x n basis with the same Gram matrix: sqrt(s) * M when M is
    /// square, otherwise the Cholesky factor of the Gram matrix.
    std::vector<std::vector<double>> real_basis() const;

    /// Coordinates of an ambient vector (in M-coordinates, i.e. before the
    /// sqrt(s) factor) with respect to the basis, if it lies in the span.
    std::optional<RationalVector> coordinates(const RationalVector& ambient) const;

private:
    RationalMatrix basis_;
    Rational norm_scale_;
    std::string label_;
    RationalMatrix gram_;
};

struct LatticeVector {
    std::vector<std::int64_t> coords;  // integer coordinates in the basis
    Rational norm;
};

/// Multiplier r or r*sqrt(2) with r > 0 rational.
struct ScaleFactor {
    Rational r = 1;
    bool sqrt2 = false;
};

const RationalMatrix& gram(const Lattice& l);
Rational det_lattice(const Lattice& l);
Lattice dual_basis(const Lattice& l);

bool is_integral(const Lattice& l);
bool is_unimodular(const Lattice& l);
/// Unimodular with every diagonal Gram entry even.
bool is_even(const Lattice& l);

/// True iff both lattices are the same point set. Throws DimensionMismatch
/// for different ambient or lattice dimensions.
bool same_lattice(const Lattice& a, const Lattice& b);

/// Maximum number of search-tree nodes visited before SearchTooLarge.
constexpr std::uint64_t kSearchNodeLimit = 100'000'000;

/// All nonzero vectors of norm <= bound, both signs, exact norms.
std::vector<LatticeVector> enumerate_vectors_up_to_norm(const Lattice& l, const Rational& bound);

/// Number of vectors of norm m for m = 0..max_norm (A_0 = 1).
/// Throws NotIntegral for non-integral lattices.
std::vector<BigInt> theta_coeffs_enum(const Lattice& l, std::int64_t max_norm);

/// Theta series as a QSeries in u = q^{1/4} with all terms of norm <= max_norm.
/// Norms must be multiples of 1/4 (otherwise NotIntegral).
QSeries theta_series_enum(const Lattice& l, const Rational& max_norm);

/// Count of minimal nonzero vectors. Requires an integral lattice.
std::int64_t kissing_number(const Lattice& l);
/// Minimal nonzero norm (integral lattices).
std::int64_t minimal_norm(const Lattice& l);

Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice scale(const Lattice& l, const ScaleFactor& c);

/// Base lattice plus glue vectors g_0 = 0, g_1, ..., g_{m-1} written in the
/// base's ambient (M-) coordinates.
struct GlueRecipe {
    Lattice base;
    std::vector<RationalVector> glue_vectors;
    bool unimodular_target = true;
};

/// Union of the cosets base + g_i. Checks that the glue set is closed modulo
/// the base (GlueNotClosed), that its cosets are distinct, and for a
/// unimodular target that m^2 = det(base) (IndexMismatch).
Lattice build_glue(const GlueRecipe& recipe);

}  // namespace seclat

#endif
