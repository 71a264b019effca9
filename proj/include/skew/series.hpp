#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skew/element_format.hpp"
#include "skew/filtration.hpp"
#include "skew/twist.hpp"

namespace skew {

enum class OperatorKind {
    /// Words in Y = δ, Z = σ.
    delta_sigma,
    /// Words in Y = δ′, Z = σ′.
    delta_prime_sigma_prime,
};

/// Shared arithmetic data for R[[t;σ,δ]] and its Laurent quotients: the twist,
/// a filtration, and memoised commutation operators. Caches are mutex-guarded.
class SkewContext {
public:
    /// Throws unless the filtration levels are σ-, σ′- and δ-stable ideals.
    static std::shared_ptr<const SkewContext> create(TwistData twist, Filtration filt);

    const CoefficientRing& ring() const { return *twist_.ring; }
    const RingPtr& ring_ptr() const { return twist_.ring; }
    const TwistData& twist() const { return twist_; }
    const Filtration& filtration() const { return filt_; }
    /// Level whose ideal is the stable limit of the filtration (zero when separated).
    int top_level() const { return filt_.stabilisation_index(); }
    int word_nilpotency() const { return twist_.word_nilpotency_K; }

    Element reduce(const Element& a, int level) const { return filt_.level(level).reduce(a); }

    /// M_{k,l}(Y,Z): the sum of all words with k letters Y and l letters Z.
    const LinearMap& monomial(OperatorKind kind, int k, int l) const;
    /// σ^e for any integer e.
    const LinearMap& sigma_power(int e) const;
    /// t^j·r = Σ_n left_commutator(j,n)(r)·t^n for lowest_exponent(j) ≤ n ≤ j.
    const LinearMap& left_commutator(int j, int n) const;
    /// r·t^j = Σ_n t^n·right_commutator(j,n)(r) for lowest_exponent(j) ≤ n ≤ j.
    const LinearMap& right_commutator(int j, int n) const;
    /// Smallest exponent occurring when t^j is moved past a coefficient.
    int lowest_exponent(int j) const;

private:
    SkewContext(TwistData twist, Filtration filt);
    TwistData twist_;
    Filtration filt_;
    LinearMap zero_;
    std::vector<LinearMap> sigma_powers_;
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<int, int, int>, LinearMap> monomials_;
    mutable std::map<std::tuple<int, int, int>, LinearMap> commutators_;
    const LinearMap& monomial_locked(OperatorKind kind, int k, int l) const;
};

using ContextPtr = std::shared_ptr<const SkewContext>;

/// Context over R with σ, δ and the Jacobson-adic filtration.
ContextPtr make_context(const RingPtr& R, const LinearMap& sigma, const LinearMap& delta);
/// Context with σ = id and δ = 0.
ContextPtr make_commutative_context(const RingPtr& R);

enum class Form {
    /// Σ a_i t^i
    left,
    /// Σ t^i a_i
    right,
};

class ZeroElementError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IncoherentTowerError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A truncated Laurent element Σ a_i t^i (or Σ t^i a_i) with coefficients reduced
/// modulo I_level and all exponents ≥ bound unknown.
class SkewSeries {
public:
    SkewSeries(ContextPtr ctx, int level, Form form = Form::left);

    static SkewSeries from_terms(ContextPtr ctx, int level, Form form, std::map<int, Element> terms,
                                 std::optional<int> bound = std::nullopt);
    static SkewSeries constant(ContextPtr ctx, int level, const Element& r, Form form = Form::left);
    static SkewSeries monomial(ContextPtr ctx, int level, const Element& r, int exponent, Form form = Form::left);
    static SkewSeries t_power(ContextPtr ctx, int level, int exponent, Form form = Form::left);
    static SkewSeries one(ContextPtr ctx, int level, Form form = Form::left);
    /// Parses the element grammar as a left-form element, then converts.
    static SkewSeries parse(ContextPtr ctx, int level, const std::string& text, Form form = Form::left);

    const ContextPtr& context() const { return ctx_; }
    const CoefficientRing& ring() const { return ctx_->ring(); }
    int level() const { return level_; }
    Form form() const { return form_; }
    const std::map<int, Element>& coefficients() const { return coeffs_; }
    Element coefficient(int i) const;
    std::optional<int> bound() const { return bound_; }
    bool is_exact() const { return !bound_.has_value(); }
    /// No known nonzero coefficient.
    bool is_zero() const { return coeffs_.empty(); }
    /// Lowest stored exponent, or the bound if nothing is stored; std::nullopt for exact zero.
    std::optional<int> lowest() const;
    /// All known coefficients at exponents ≥ 0.
    bool in_power_series() const;

    SkewSeries operator+(const SkewSeries& o) const;
    SkewSeries operator-(const SkewSeries& o) const;
    SkewSeries operator-() const;
    SkewSeries operator*(const SkewSeries& o) const;

    SkewSeries truncated(int N) const;
    SkewSeries exact() const;
    /// Same element written in the other form.
    SkewSeries in_form(Form f) const;
    /// Coefficientwise reduction modulo I_{k′} for k′ ≤ level.
    SkewSeries projected(int level) const;
    /// Reuses the stored representatives at a higher level.
    SkewSeries lifted(int level) const;
    /// Equal coefficients at every exponent known to both; forms must agree.
    bool agrees_with(const SkewSeries& o) const;
    bool operator==(const SkewSeries& o) const;

    TermList terms() const { return TermList{coeffs_, bound_}; }
    /// Element grammar of the left form.
    std::string to_string() const;

private:
    ContextPtr ctx_;
    int level_ = 0;
    Form form_ = Form::left;
    std::map<int, Element> coeffs_;
    std::optional<int> bound_;

    void normalise();
    void check_compatible(const SkewSeries& o) const;
};

/// M_{k,l}(Y,Z)(r).
Element monomial_apply(const SkewContext& ctx, OperatorKind kind, int k, int l, const Element& r);

enum class CommuteSide {
    /// t^j·r written as Σ c_n t^n.
    t_on_left,
    /// r·t^j written as Σ t^n c_n.
    t_on_right,
};

SkewSeries commute(const ContextPtr& ctx, int level, int j, const Element& r, CommuteSide side);

struct OreWitness {
    SkewSeries a_prime;
    int N;
};

/// For a ∈ A and j < 0 returns a′ ∈ A and the least N ≥ 0 with a·t^N = t^{−j}·a′.
OreWitness ore_witness(const SkewSeries& a, int j);

struct OrderLeading {
    int order;
    Element leading;
};

/// Lowest known exponent with nonzero coefficient; throws ZeroElementError for zero.
OrderLeading order_leading(const SkewSeries& b);

/// Image of a ∈ J_k in gr_k, as the level-(k+1) element whose coefficients lie in I_k.
/// Throws std::invalid_argument if some coefficient is outside I_k.
SkewSeries graded_component(const SkewSeries& a, int k);

/// A family of per-level representatives checked for projection coherence on access.
class Tower {
public:
    using Rule = std::function<SkewSeries(int level)>;
    explicit Tower(Rule rule) : rule_(std::move(rule)) {}

    SkewSeries at(int level) const;

private:
    Rule rule_;
    mutable std::mutex mutex_;
    mutable std::map<int, SkewSeries> cache_;
};

}  // namespace skew
