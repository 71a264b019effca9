#pragma once

#include <string>
#include <vector>

#include "skew/series.hpp"

namespace skew {

/// Ā = (R/Jac)[[t;σ̄,δ̄]] together with the reduction from A.
struct ResidueContext {
    Residue residue;
    ContextPtr context;

    /// Coefficientwise reduction of a left-form element; the t-adic bound is kept.
    SkewSeries reduce(const SkewSeries& f) const;
    /// Additive section back to the given context at the given level.
    SkewSeries lift(const SkewSeries& fbar, const ContextPtr& target, int level) const;
};

/// Throws std::invalid_argument if the twist does not preserve the radical.
ResidueContext residue_context(const ContextPtr& ctx);

/// One σ-orbit R_1 × … × R_n of simple factors, with σ(R_i) = R_{i+1} and σ(R_n) = R_1.
/// Maps on R_1 = R·e_1 are stored as maps on R that vanish off their source factor.
struct CyclicBlock {
    /// Indices into the ring's block idempotents, in orbit order.
    std::vector<std::size_t> members;
    std::vector<Element> idempotents;
    /// e_1 + … + e_n.
    Element unit;
    /// τ_i(r) = σ(r·e_i).
    std::vector<LinearMap> tau;
    /// φ₀ = τ_n∘…∘τ_1.
    LinearMap phi0;
    /// ψ_i(r) = τ_n∘…∘τ_i(r·e_i) for i ≥ 2 and ψ_1(r) = r·e_1, all landing in R_1.
    std::vector<LinearMap> psi;

    int length() const { return static_cast<int>(idempotents.size()); }
};

struct CyclicDecomposition {
    std::vector<CyclicBlock> blocks;
    std::string report(const CoefficientRing& R) const;
};

/// Groups the simple factors of a semisimple ring into σ-orbits.
/// Throws std::invalid_argument if the ring exposes no block idempotents or σ does not permute them.
CyclicDecomposition decompose_cyclic(const CoefficientRing& R, const LinearMap& sigma);

/// Flattening ψ of a block applied to r: one R_1-component per factor.
std::vector<Element> flatten(const CyclicBlock& block, const Element& r);
/// π∘φ acting on a flattened tuple.
std::vector<Element> cycle_twist(const CyclicBlock& block, const std::vector<Element>& tuple);

/// σ = Int(C)∘M_n(γ) on M_n(𝔽_q), with γ = Frobenius^gamma_exponent.
struct InnerFactorisation {
    Element C;
    Element C_inverse;
    int gamma_exponent = 0;
    /// M_n(γ) as a map on the matrix ring.
    LinearMap gamma;
    /// γ on 𝔽_q itself.
    LinearMap gamma_on_field;
};

/// C is normalised so that its first nonzero entry in row-major order is 1.
InnerFactorisation factor_matrix_automorphism(const CoefficientRing& M, const LinearMap& sigma);
/// σ(E) = C·M_n(γ)(E)·C⁻¹ on every basis element.
bool verify_factorisation(const CoefficientRing& M, const LinearMap& sigma, const InnerFactorisation& f);

enum class InnerSide {
    /// C[[t;Int(u)∘σ]] → C[[t;σ]], t ↦ u·t.
    left,
    /// C[[t;σ∘Int(u)]] → C[[t;σ]], t ↦ t·u.
    right,
};

/// Σ a_n t^n ↦ Σ a_n (ut)^n (or (tu)^n). Both contexts must have δ = 0 and matching twists.
SkewSeries transport_inner(const SkewSeries& a, const Element& u, const ContextPtr& target,
                           InnerSide side = InnerSide::left);

/// M_n(𝔽_q)[[t;σ]] ≅ M_n(𝔽_q)[[t;M_n(γ)]] ≅ M_n(𝔽_q[[t;γ]]).
class MatrixSkewIsomorphism {
public:
    explicit MatrixSkewIsomorphism(const ContextPtr& source);

    const InnerFactorisation& factorisation() const { return factor_; }
    const ContextPtr& source() const { return source_; }
    /// M_n(𝔽_q)[[t;M_n(γ)]].
    const ContextPtr& untwisted() const { return middle_; }
    /// 𝔽_q[[t;γ]].
    const ContextPtr& entries() const { return field_ctx_; }
    int size() const { return n_; }

    /// Row-major n×n matrix of entries.
    std::vector<SkewSeries> to_matrix(const SkewSeries& a) const;
    SkewSeries from_matrix(const std::vector<SkewSeries>& m) const;
    /// Matrix product over 𝔽_q[[t;γ]].
    std::vector<SkewSeries> multiply(const std::vector<SkewSeries>& a, const std::vector<SkewSeries>& b) const;

private:
    ContextPtr source_, middle_, field_ctx_;
    InnerFactorisation factor_;
    int n_ = 1;
    int d_ = 1;
};

/// Inverse of a power series with invertible constant term by a geometric series, known below N
/// unless the precision of u runs out first.
SkewSeries invert_unit_series(const SkewSeries& u, int N);

struct WeierstrassFactorisation {
    SkewSeries unit;
    int n = 0;
    SkewSeries unit_inverse;
};

/// f = u·t^n over D[[t;σ]] for a finite field D, with n = order(f). A truncated f known below N
/// gives u known below N − n; an exact f gives an exact u. The inverse of u is known below
/// N − n, with N one past the top exponent for exact f.
/// Throws ZeroElementError if f vanishes at its working precision.
WeierstrassFactorisation weierstrass(const SkewSeries& f);

/// Factor contexts C_j[[t;σ_j,δ_j]] of a product ring whose twist preserves every factor.
/// Throws std::invalid_argument if the twist moves a factor.
std::vector<ContextPtr> split_product(const ContextPtr& ctx);
/// Image of a under the projection onto factor i.
SkewSeries project_to_factor(const SkewSeries& a, std::size_t i, const ContextPtr& factor);
/// Element with the given factor components.
SkewSeries join_factors(const ContextPtr& ctx, const std::vector<SkewSeries>& parts);

}  // namespace skew
