#ifndef SECLAT_WIRETAP_HPP
#define SECLAT_WIRETAP_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "seclat/codes.hpp"
#include "seclat/lattice.hpp"

namespace seclat {

using IntVector = std::vector<std::int64_t>;
using RealVector = std::vector<double>;

/// 64-bit counter-based generator: output k of stream s under seed is a
/// fixed mix of (seed, s, k), so streams can be split across workers.
class CounterRng {
public:
    using result_type = std::uint64_t;
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0);
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Fine lattice L_b, coarse lattice L_e inside it, and one representative per
/// coset. Points are carried as integer coordinates in the fine basis.
class NestedPair {
public:
    /// reps are fine coordinates. Throws NotNested when coarse is not a
    /// sublattice of fine, InvalidArgument when the reps are not a transversal.
    NestedPair(Lattice fine, Lattice coarse, std::vector<IntVector> reps, std::string scheme = {});

    const Lattice& fine() const { return fine_; }
    const Lattice& coarse() const { return coarse_; }
    int dimension() const { return fine_.dimension(); }
    const std::string& scheme() const { return scheme_; }
    const std::vector<IntVector>& coset_reps() const { return reps_; }
    std::size_t coset_count() const { return reps_.size(); }
    /// Coarse basis rows in fine coordinates.
    const std::vector<IntVector>& coarse_in_fine() const { return coarse_rows_; }
    const std::vector<RealVector>& real_basis() const { return basis_; }

    /// Canonical representative of u + coarse (fine coordinates).
    IntVector coset_key(IntVector u) const;
    /// Index of the rep sharing u's coset.
    std::size_t coset_of(const IntVector& u) const;
    RealVector to_real(const IntVector& u) const;
    bool contains_in_coarse(const IntVector& u) const;

private:
    Lattice fine_;
    Lattice coarse_;
    std::vector<IntVector> reps_;
    std::string scheme_;
    std::vector<IntVector> coarse_rows_;
    std::vector<IntVector> hnf_;
    std::vector<RealVector> basis_;
    std::vector<int> pivots_;
    std::map<IntVector, std::size_t> key_index_;
};

struct ChannelConfig {
    double sigma_b = 0.0;
    double sigma_e = 1.0;
    void validate() const;
};

struct SimResult {
    std::int64_t trials = 0;
    std::int64_t correct = 0;
    double p_hat = 0.0;
    double ci95_halfwidth = 0.0;
};

constexpr int kRandomizerBox = 2;
constexpr int kMaxDecodeDimension = 16;

/// Fine coordinates of rep[m] + t, t a coarse point with coarse-basis
/// coordinates uniform in [-box, box]. Throws BadIndex.
IntVector coset_encode_coords(const NestedPair& pair, std::size_t message, int box, CounterRng& rng);
RealVector coset_encode(const NestedPair& pair, std::size_t message, int box, CounterRng& rng);

RealVector awgn(const RealVector& x, double sigma, CounterRng& rng);

/// Exact closest point for a square real basis (rows). Babai rounding gives
/// the initial radius; a Schnorr-Euchner search then finds the minimum.
/// Ties go to the lexicographically smaller coordinate vector.
class ClosestPointSearcher {
public:
    explicit ClosestPointSearcher(const std::vector<RealVector>& basis);
    IntVector nearest(const RealVector& y) const;
    int dimension() const { return n_; }

private:
    int n_;
    std::vector<RealVector> inv_;  // basis inverse, for real coordinates
    std::vector<std::vector<double>> q_;
};

/// Closest lattice vector to y, as integer coordinates. DimensionMismatch,
/// SearchTooLarge above 16 dimensions.
IntVector nearest_point(const Lattice& l, const RealVector& y);

/// Fraction of trials where Eve's nearest fine point lies in the sent coset.
/// Trials are split into fixed blocks, each with its own RNG stream, so the
/// result depends only on (seed, trials).
SimResult eve_decision_mc(const NestedPair& pair, const ChannelConfig& cfg, std::int64_t trials,
                          std::uint64_t seed, int box = kRandomizerBox, unsigned threads = 0);

/// 1 + sum over nonzero t with |t|^2 <= bound of exp(-|t|^2 / 2 sigma^2).
double coset_theta_sum(const Lattice& l, double sigma, const Rational& bound);

/// Continuum estimate of the omitted part of coset_theta_sum beyond bound.
double theta_tail_estimate(const Lattice& l, double sigma, double bound);

struct SecondMoment {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo estimate of the integral of |x|^2 over the Voronoi cell.
SecondMoment second_moment_mc(const Lattice& l, std::int64_t samples, std::uint64_t seed);

/// Theta-series approximation of Eve's correct-decision probability:
/// S(sigma_e) sqrt(det L_b) / (sigma_e sqrt(2 pi))^n, times
/// (1 - U / (2 sigma_e^2 sqrt(det L_b))) when a second moment U is given.
/// The sum is taken up to norm_bound; TailTooLarge when the estimated
/// remainder exceeds 1e-12 of the sum.
double theta_approx_pce(const NestedPair& pair, const ChannelConfig& cfg, const Rational& norm_bound,
                        std::optional<double> second_moment = std::nullopt);
/// Same, with the norm bound chosen from the tail estimate.
double theta_approx_pce(const NestedPair& pair, const ChannelConfig& cfg,
                        std::optional<double> second_moment = std::nullopt);

enum class NestingScheme { Zn, TwoLambda };

/// Pairs from a self-dual code C (fine = Construction-A lattice of C):
/// Zn: coarse = sqrt2 Z^n, reps c/sqrt2 over codewords c;
/// TwoLambda: coarse = 2 fine, reps c/sqrt2 + sqrt2 c' with c' in the span
/// of the unit vectors at C's non-pivot columns. Throws NotSelfDual.
NestedPair build_nested_from_code(const BinaryCode& c, NestingScheme scheme);

/// a Z^n inside Z^n with reps {0..a-1}^n.
NestedPair integer_pair(int n, int a);

NestingScheme parse_scheme(const std::string& name);
std::string scheme_name(NestingScheme s);

}  // namespace seclat

#endif
