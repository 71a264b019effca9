#pragma once

#include <string>
#include <vector>

#include "skew/linalg.hpp"
#include "skew/ring.hpp"

namespace skew {

/// An automorphism σ of R with a left σ-derivation δ, so that t·r = σ(r)t + δ(r),
/// together with the dual data σ′ = σ⁻¹ and δ′ = −δ∘σ′ for which r·t = t·σ′(r) + δ′(r).
struct TwistData {
    RingPtr ring;
    LinearMap sigma;
    LinearMap delta;
    LinearMap sigma_prime;
    LinearMap delta_prime;
    /// Order of σ in Aut(R).
    int sigma_order = 1;
    /// Least M with δ^M = δ′^M = 0.
    int nilpotency_M = 1;
    /// Least K such that every word in δ, σ, σ′ with K letters δ vanishes.
    int word_nilpotency_K = 1;
    /// Least s ≥ 1 with δ(Jac^s) ⊆ Jac and δ′(Jac^s) ⊆ Jac.
    int continuity_s = 1;

    bool delta_is_zero() const { return delta.is_zero(); }
};

/// Validates the automorphism and derivation laws and computes M, K and s.
/// Throws std::invalid_argument naming the failed law.
TwistData build_twist(const RingPtr& R, const LinearMap& sigma, const LinearMap& delta);

LinearMap sigma_minus_id(const LinearMap& sigma);
/// x ↦ u·x·u⁻¹ for a unit u.
LinearMap inner_automorphism(const CoefficientRing& R, const Element& u);
/// Entrywise Frobenius a ↦ a^p on a finite field or a matrix ring over one.
LinearMap frobenius(const CoefficientRing& R);
/// ℤ/p^m-linear extension of a group automorphism given by the image index of each element.
LinearMap group_automorphism(const CoefficientRing& R, const std::vector<std::size_t>& images);

/// Images V_0 = R, V_{k+1} = Σ_a σ^a δ(V_k); the chain descends and its last entry is its limit.
std::vector<Submodule> delta_word_images(const TwistData& tw);

}  // namespace skew
