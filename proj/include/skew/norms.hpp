#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "skew/series.hpp"

namespace skew {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" for integers.
std::string format_rational(const Rational& r);
/// Accepts "p/q" or an integer.
Rational parse_rational(const std::string& text);

enum class NormKind { jac_adic, ideal_adic };

/// |a| = ρ^m for a ∈ J^m \ J^{m+1}, |0| = 0, on a finite ring with nilpotent ideal J.
class RingNorm {
public:
    NormKind kind() const { return kind_; }
    const Rational& rho() const { return rho_; }
    const Submodule& ideal() const { return powers_.at(1); }
    /// J^m; zero from nilpotency() on.
    const Submodule& ideal_power(int m) const;
    int nilpotency() const { return static_cast<int>(powers_.size()) - 1; }
    /// Contraction constant with |δ(a)| ≤ D·|a|; zero when δ = 0.
    const Rational& D() const { return D_; }
    /// Whether D was obtained by enumerating the ring rather than from ideal images.
    bool exhaustive() const { return exhaustive_; }

    /// Largest m with a ∈ J^m, or std::nullopt for a = 0.
    std::optional<int> level(const Element& a) const;
    Rational value(const Element& a) const;

private:
    friend RingNorm build_norm(const TwistData&, NormKind, const Submodule&, const Rational&);
    NormKind kind_ = NormKind::jac_adic;
    Rational rho_;
    std::vector<Submodule> powers_;
    Rational D_;
    bool exhaustive_ = false;
};

/// Throws std::invalid_argument if ρ ∉ (0,1), J is not a nilpotent ideal, an axiom fails, or D ≥ 1.
RingNorm build_norm(const TwistData& tw, NormKind kind, const Submodule& J, const Rational& rho);
RingNorm jac_norm(const TwistData& tw, const Rational& rho = Rational(1, 2));

struct AxiomReport {
    /// Axioms (i) to (vii) in order: ultrametric, definite, submultiplicative, |1| = 1,
    /// |a| ≤ 1, σ-invariant, δ-contractive.
    std::vector<bool> axioms = std::vector<bool>(7, false);
    bool exhaustive = false;
    /// |M_{k,l}(δ,σ)(a)| ≤ D^k·|a| for k + l ≤ 6.
    bool monomial_bound = false;
    std::string failure;

    bool ok() const;
};

/// Single-element axioms are checked on all of R when it has at most 4096 elements and pair
/// axioms when it has at most 256; larger rings fall back to ideal-power containments.
AxiomReport check_axioms(const RingNorm& norm, const TwistData& tw);
/// check_axioms plus the monomial bound, using the operators cached in ctx.
AxiomReport check_axioms(const RingNorm& norm, const SkewContext& ctx);

/// |x|_u = max_i |a_i|·u^i over the left-form coefficients. Throws unless D < u < 1.
Rational laurent_norm(const RingNorm& norm, const SkewSeries& x, const Rational& u);

/// Membership of x in B(|·|;u). Every truncated element is finitely supported, so this is
/// always "finitely supported: member"; the limit condition only matters for infinite supports.
std::string ball_membership(const RingNorm& norm, const SkewSeries& x, const Rational& u);

struct SubmultiplicativityReport {
    int pairs = 0;
    int product_failures = 0;
    int sum_failures = 0;
    bool ok() const { return product_failures == 0 && sum_failures == 0; }
};

SubmultiplicativityReport check_submultiplicative(const RingNorm& norm, const std::vector<SkewSeries>& samples,
                                                  const Rational& u);

struct EquivalenceBounds {
    /// Least n₁ with J₁^{n₁} ⊆ J₂ and least n₂ with J₂^{n₂} ⊆ J₁.
    int n1 = 0;
    int n2 = 0;
    /// ρ₂ = ρ₁^{num/den}.
    int exponent_num = 1;
    int exponent_den = 1;
    std::uint64_t elements_checked = 0;
    bool exhaustive = false;
    bool holds = false;
};

/// Verifies ρ₂^{n₂}|a|₁^{n₂σ} ≤ |a|₂ ≤ ρ₂⁻¹|a|₁^{σ/n₁} with σ = log ρ₂ / log ρ₁.
/// Throws std::invalid_argument if σ is not a ratio of integers up to 64 or an ideal never enters the other.
EquivalenceBounds equivalence_bounds(const RingNorm& n1, const RingNorm& n2, const CoefficientRing& R);

}  // namespace skew
