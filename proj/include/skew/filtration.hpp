#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skew/twist.hpp"

namespace skew {

/// A descending chain of ideals I_0 = R ⊇ I_1 ⊇ … stored up to its stabilisation.
struct Filtration {
    std::string kind;
    /// levels.back() equals every later level.
    std::vector<Submodule> levels;
    /// Set when a depth limit was reached before the chain stabilised.
    bool depth_exhausted = false;

    int stabilisation_index() const { return static_cast<int>(levels.size()) - 1; }
    const Submodule& level(int k) const;
    bool separated() const { return levels.back().is_zero(); }
};

Filtration jac_adic_filtration(const CoefficientRing& R);
/// Level l is generated by the products V_{m_1}·…·V_{m_r} with m_1+…+m_r = l,
/// where V_m is the span of all images of words with m letters δ.
Filtration standard_filtration(const TwistData& tw, int depth = 64);
/// I_0 = R followed by the given ideals; throws unless each is an ideal and the chain descends.
Filtration explicit_filtration(const CoefficientRing& R, const std::vector<Submodule>& levels);

struct AssumptionReport {
    /// Levels are σ-, σ′- and δ-stable ideals with I_k·I_l ⊆ I_{k+l}.
    bool stable = false;
    bool separated = false;
    bool open = true;
    bool assumption_I = false;
    bool assumption_SI0 = false;
    bool assumption_SI = false;
    std::string failure;
    std::optional<Element> witness;
};

AssumptionReport check_assumptions(const TwistData& tw, const Filtration& filt);

}  // namespace skew
