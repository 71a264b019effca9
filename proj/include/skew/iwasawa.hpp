#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skew/series.hpp"

namespace skew {

/// A finite p-group H given by permutation generators, with the action of γ given either by a
/// conjugating permutation or by the images of the generators.
struct GroupSpec {
    int degree = 1;
    /// Generators in cycle notation over the points 1..degree.
    std::vector<std::string> generators;
    /// Defaults to h1, h2, … (or h for a single generator).
    std::vector<std::string> names;
    /// γ as a permutation normalising H.
    std::optional<std::string> gamma;
    /// γhγ⁻¹ for each generator h, in cycle notation.
    std::vector<std::string> action_images;
    Int p = 2;
    int m = 1;
};

/// R = (ℤ/p^m)[H] with σ(h) = γhγ⁻¹ and δ = σ − id, as the finite-level model of t = γ − 1.
struct GroupDatum {
    FiniteGroup H;
    /// Index of γhγ⁻¹ for each element h.
    std::vector<std::size_t> action;
    int action_order = 1;
    Int p = 2;
    int m = 1;
    RingPtr ring;
    /// Jacobson-adic context.
    ContextPtr context;
    AssumptionReport assumptions;
    bool delta_in_jac = false;
    bool delta_in_jac2 = false;

    /// Line-oriented key=value record.
    std::string report() const;
};

/// Throws std::invalid_argument if H is not a p-group, the action is not an automorphism, or its
/// order is not a power of p.
GroupDatum build_iwasawa(const FiniteGroup& H, const std::vector<std::size_t>& action, Int p, int m);
GroupDatum build_iwasawa(const GroupSpec& spec);

/// Images of each element under the homomorphism extending the given generator images.
/// Throws std::invalid_argument if the images do not define a homomorphism.
std::vector<std::size_t> extend_generator_images(const FiniteGroup& H, const std::vector<std::size_t>& images);

struct PowerfulReport {
    /// 1 for odd p, 2 for p = 2.
    int epsilon = 1;
    /// [γ,H] ⊆ H^{p^ε}.
    bool gamma_commutators = false;
    /// [H,H] ⊆ H^{p²}.
    bool derived_subgroup = false;
    /// δ(Jac) ⊆ Jac².
    bool delta_jac_in_jac2 = false;
    /// δ(h−1) ∈ Jac² for every generator h.
    bool generator_images_in_jac2 = false;
    /// (h_i−1)(h_j−1) − (h_j−1)(h_i−1) ∈ Jac³ for all generator pairs.
    bool graded_commutative = false;
    std::vector<std::string> notes;

    bool group_conditions() const { return gamma_commutators && derived_subgroup; }
    bool ring_conditions() const { return delta_jac_in_jac2 && generator_images_in_jac2 && graded_commutative; }
    std::string report() const;
};

PowerfulReport powerful_checks(const GroupDatum& gd);

struct GeneratorDemo {
    int level = 0;
    int s = 1;
    /// t′ = h(1+t)^s − 1.
    SkewSeries t_prime;
    /// a = t^s − h⁻¹t′, so that h⁻¹t′ = (1 − a·t^{−s})·t^s.
    SkewSeries a;
    /// Least j with (a·t^{−s})^j = 0.
    int nilpotency = 0;
    /// t^{−s}·(Σ_j (a·t^{−s})^j)·h⁻¹.
    SkewSeries inverse;
    bool left_verified = false;
    bool right_verified = false;

    std::string report() const;
};

/// Inverts t′ = γ′ − 1 for γ′ = hγ^s in the Laurent quotient at the given level.
/// Throws std::invalid_argument if s < 1, h − 1 is not in Jac, or a·t^{−s} is not nilpotent.
GeneratorDemo alternate_generator_demo(const GroupDatum& gd, std::size_t h, int s, int level);

}  // namespace skew
