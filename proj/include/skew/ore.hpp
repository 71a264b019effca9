#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "skew/structure.hpp"

namespace skew {

/// g·f̄ ≡ t^n (mod t^search_bound) over Ā, or f̄·g for a right witness. Since n < search_bound
/// this gives g·f̄ = t^n·v with v a unit of Ā.
struct RegularityWitness {
    SkewSeries g;
    int n = 0;
    int search_bound = 0;
};

enum class Membership {
    member,
    /// f̄ = 0, so f is a zero divisor modulo Jac.
    not_member,
    /// No witness up to the precision cap.
    not_found,
};

struct RegularityResult {
    Membership status = Membership::not_found;
    std::optional<RegularityWitness> left;
    std::optional<RegularityWitness> right;
    std::string message;

    bool member() const { return status == Membership::member; }
};

class InsufficientPrecisionError : public std::runtime_error {
public:
    InsufficientPrecisionError(const std::string& what, int required) : std::runtime_error(what), required_(required) {}
    int required() const { return required_; }

private:
    int required_;
};

/// The Ore set S of elements of A that are regular modulo Jac(R)_A, with inversion in
/// the Artinian quotients B_k of the Laurent ring.
class OreLocalisation {
public:
    /// Default cap on the t-adic search precision.
    static constexpr int default_cap = 256;

    explicit OreLocalisation(ContextPtr ctx, int cap = default_cap);

    const ContextPtr& context() const { return ctx_; }
    const ResidueContext& residue() const { return residue_; }
    int cap() const { return cap_; }

    /// Searches g·f̄ ≡ t^n (mod t^N) for n ≤ N/2, doubling N from n0 up to the cap.
    RegularityResult regularity_test(const SkewSeries& f, int n0 = 8) const;

    /// s⁻¹ in B_level, known below N. Throws InsufficientPrecisionError if N cannot be reached.
    SkewSeries invert(const SkewSeries& s, const RegularityWitness& left, int level, int N) const;
    /// Runs the regularity test first; throws std::domain_error if s is not certified.
    SkewSeries invert(const SkewSeries& s, int level, int N) const;

private:
    ContextPtr ctx_;
    ResidueContext residue_;
    int cap_;

    std::optional<RegularityWitness> solve(const SkewSeries& fbar, bool left, int N) const;
    std::optional<SkewSeries> attempt_inverse(const SkewSeries& s, const RegularityWitness& w, int level, int N,
                                              int work) const;
};

enum class FractionSide {
    /// a·s⁻¹
    right_denominator,
    /// s⁻¹·a
    left_denominator,
};

/// A fraction over A with denominator in S and per-level expansions cached on demand.
class LocalisedElement {
public:
    LocalisedElement(std::shared_ptr<const OreLocalisation> ore, SkewSeries numerator, SkewSeries denominator,
                     FractionSide side = FractionSide::right_denominator);

    const SkewSeries& numerator() const { return a_; }
    const SkewSeries& denominator() const { return s_; }
    const RegularityResult& witness() const { return witness_; }
    FractionSide side() const { return side_; }

    /// The fraction in B_level, known below N.
    SkewSeries expand(int level, int N) const;
    /// Expansion recomputed with both operands in right form, converted back to left form.
    SkewSeries expand_via_right_form(int level, int N) const;

private:
    std::shared_ptr<const OreLocalisation> ore_;
    SkewSeries a_, s_;
    FractionSide side_;
    RegularityResult witness_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, int>, SkewSeries> cache_;
};

struct ClosureReport {
    int products_checked = 0;
    int products_failed = 0;
    int saturation_checked = 0;
    int saturation_failed = 0;
    int ore_checked = 0;
    int ore_failed = 0;
    int factor_checked = 0;
    int factor_failed = 0;
    std::vector<std::string> failures;

    bool ok() const { return products_failed + saturation_failed + ore_failed + factor_failed == 0; }
};

/// On sample pairs: s, s′ ∈ S ⇒ s·s′ ∈ S; a·s ∈ S ⇒ s ∈ S; for every (s, b) a pair (t′, b′) with
/// t′ ∈ S, b′ ∈ A and t′·b = b′·s; for product rings whose twist preserves the factors,
/// membership agrees with membership of every factor.
ClosureReport s_closure_checks(const OreLocalisation& ore, const std::vector<SkewSeries>& members,
                               const std::vector<SkewSeries>& others, int N);

}  // namespace skew
