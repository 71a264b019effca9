#include <doctest.h>

#include <random>
#include <set>

#include "skew/catalog.hpp"
#include "skew/norms.hpp"
#include "support/random.hpp"

using namespace skew;
using skew::testing::random_element;
using skew::testing::random_series;

namespace {

Element el(const CoefficientRing& R, const std::string& s) { return parse_coefficient(R, s); }

SkewSeries S(const ContextPtr& ctx, const std::string& s) { return SkewSeries::parse(ctx, ctx->top_level(), s); }

Rational power(const Rational& b, int e) {
    Rational out = 1;
    for (int i = 0; i < std::abs(e); ++i) out *= b;
    return e < 0 ? Rational(1) / out : out;
}

/// J^m as sets, built by closing the m-fold products of elements of J under addition.
class PowerOracle {
public:
    PowerOracle(const CoefficientRing& R, const std::set<Element>& J) : R_(R) {
        std::set<Element> all;
        for (std::uint64_t i = 0; i < *R.cardinality(); ++i) all.insert(R.element_at(i));
        powers_.push_back(all);
        while (!(powers_.back().size() == 1)) {
            std::set<Element> gens;
            for (const auto& a : powers_.back())
                for (const auto& b : J) gens.insert(R.mul(a, b));
            powers_.push_back(additive_closure(gens));
        }
    }

    std::optional<int> level(const Element& a) const {
        if (is_zero(a)) return std::nullopt;
        int m = 0;
        while (powers_[static_cast<std::size_t>(m + 1)].count(a)) ++m;
        return m;
    }

    Rational value(const Element& a, const Rational& rho) const {
        auto m = level(a);
        return m ? power(rho, *m) : Rational(0);
    }

private:
    const CoefficientRing& R_;
    std::vector<std::set<Element>> powers_;

    std::set<Element> additive_closure(const std::set<Element>& gens) const {
        std::set<Element> out{R_.zero()};
        std::vector<Element> frontier{R_.zero()};
        while (!frontier.empty()) {
            Element a = frontier.back();
            frontier.pop_back();
            for (const auto& g : gens) {
                Element s = R_.add(a, g);
                if (out.insert(s).second) frontier.push_back(s);
            }
        }
        return out;
    }
};

std::set<Element> as_set(const CoefficientRing& R, const Submodule& J) {
    std::set<Element> out;
    for (std::uint64_t i = 0; i < *R.cardinality(); ++i)
        if (J.contains(R.element_at(i))) out.insert(R.element_at(i));
    return out;
}

/// max_i |a_i|·u^i over the left-form coefficients, using the oracle values.
Rational oracle_laurent(const PowerOracle& o, const Rational& rho, const SkewSeries& x, const Rational& u) {
    Rational best = 0;
    const SkewSeries xl = x.in_form(Form::left);
    for (const auto& [e, c] : xl.coefficients()) {
        Rational v = o.value(c, rho) * power(u, e);
        if (v > best) best = v;
    }
    return best;
}

}  // namespace

TEST_CASE("Jacobson-adic norm on the twisted dual numbers") {
    auto ctx = twisted_dual_numbers();
    const auto& R = ctx->ring();
    RingNorm n = jac_norm(ctx->twist());
    CHECK(n.kind() == NormKind::jac_adic);
    CHECK(n.value(el(R, "x")) == Rational(1, 2));
    CHECK(n.value(el(R, "2x")) == Rational(1, 4));
    CHECK(n.value(R.one()) == 1);
    CHECK(n.value(R.zero()) == 0);
    CHECK(n.D() == Rational(1, 2));
    CHECK(n.exhaustive());
    CHECK(n.nilpotency() == 3);

    AxiomReport rep = check_axioms(n, *ctx);
    CHECK(rep.ok());
    CHECK(rep.exhaustive);
    CHECK(rep.monomial_bound);
}

TEST_CASE("norm levels agree with a set-based oracle") {
    for (const auto& entry : localisation_catalog()) {
        CAPTURE(entry.name);
        const auto& tw = entry.context->twist();
        const auto& R = *tw.ring;
        PowerOracle oracle(R, as_set(R, R.jacobson()));
        RingNorm n = build_norm(tw, NormKind::jac_adic, R.jacobson(), Rational(1, 3));
        for (std::uint64_t i = 0; i < *R.cardinality(); ++i) {
            Element a = R.element_at(i);
            CHECK(n.level(a) == oracle.level(a));
        }
    }
}

TEST_CASE("norm construction errors") {
    auto ctx = twisted_dual_numbers();
    const auto& R = ctx->ring();
    CHECK_THROWS_WITH_AS(build_norm(ctx->twist(), NormKind::jac_adic, R.jacobson(), Rational(1)),
                         "rho must lie strictly between 0 and 1", std::invalid_argument);
    CHECK_THROWS_AS(build_norm(ctx->twist(), NormKind::ideal_adic, R.whole(), Rational(1, 2)), std::invalid_argument);
    auto bad = inner_matrix_ring_with_derivation();
    CHECK_THROWS_WITH_AS(jac_norm(bad->twist()), "delta is not contractive (D = 1)", std::invalid_argument);
    // The trivial derivation gives D = 0.
    CHECK(jac_norm(inner_matrix_ring()->twist()).D() == 0);
}

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational(" 6/8 ") == Rational(3, 4));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK(format_rational(Rational(32, 27)) == "32/27");
    CHECK(format_rational(Rational(4, 2)) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("Laurent norms") {
    auto ctx = twisted_dual_numbers();
    RingNorm n = jac_norm(ctx->twist());
    CHECK(laurent_norm(n, S(ctx, "x*t^-3"), Rational(3, 4)) == Rational(32, 27));
    for (Rational u : {Rational(9, 16), Rational(5, 8), Rational(3, 4)}) {
        CHECK(laurent_norm(n, S(ctx, "1"), u) == 1);
        for (int k = -3; k <= 3; ++k) CHECK(laurent_norm(n, SkewSeries::t_power(ctx, ctx->top_level(), k), u) == power(u, k));
    }
    CHECK(ball_membership(n, S(ctx, "x*t^-3"), Rational(3, 4)) == "finitely supported: member");
    CHECK_THROWS_AS(laurent_norm(n, S(ctx, "1"), Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(laurent_norm(n, S(ctx, "1"), Rational(1)), std::invalid_argument);

    // |x·x|_u = 0 and |t·t⁻¹|_u = u·u⁻¹.
    SkewSeries x = S(ctx, "x");
    CHECK(laurent_norm(n, x * x, Rational(3, 4)) == 0);
    SubmultiplicativityReport eq = check_submultiplicative(n, {S(ctx, "t^1"), S(ctx, "t^-1")}, Rational(3, 4));
    CHECK(eq.ok());
}

TEST_CASE("Laurent norm is a submultiplicative module norm") {
    std::mt19937_64 rng(61);
    for (auto ctx : {twisted_dual_numbers(), inverted_cyclic_group_algebra(), untwisted(4)}) {
        const auto& tw = ctx->twist();
        const auto& R = *tw.ring;
        RingNorm n = jac_norm(tw);
        PowerOracle oracle(R, as_set(R, R.jacobson()));
        for (Rational u : {Rational(9, 16), Rational(5, 8), Rational(3, 4)}) {
            std::vector<SkewSeries> samples;
            for (int i = 0; i < 12; ++i) samples.push_back(random_series(rng, ctx, -3, 4));
            SubmultiplicativityReport rep = check_submultiplicative(n, samples, u);
            CHECK(rep.pairs == 144);
            CHECK(rep.ok());
            for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
                const SkewSeries& a = samples[i];
                const SkewSeries& b = samples[i + 1];
                CHECK(laurent_norm(n, a, u) == oracle_laurent(oracle, n.rho(), a, u));
                CHECK(oracle_laurent(oracle, n.rho(), a * b, u) <=
                      oracle_laurent(oracle, n.rho(), a, u) * oracle_laurent(oracle, n.rho(), b, u));
                Element r = random_element(rng, R);
                SkewSeries ra = SkewSeries::constant(ctx, ctx->top_level(), r) * a;
                CHECK(laurent_norm(n, ra, u) <= n.value(r) * laurent_norm(n, a, u));
            }
        }
    }
}

TEST_CASE("ideal norm equivalence bounds") {
    auto ctx = twisted_dual_numbers();
    const auto& tw = ctx->twist();
    const auto& R = ctx->ring();
    Submodule J1 = R.ideal({el(R, "2"), el(R, "x")});
    Submodule J2 = R.ideal({el(R, "2x")});
    CHECK(J2 == R.ideal_power(J1, 2));

    struct Case {
        Rational rho1, rho2;
        int num, den;
    };
    for (const auto& c : {Case{Rational(1, 2), Rational(1, 2), 1, 1}, Case{Rational(1, 2), Rational(1, 4), 2, 1},
                          Case{Rational(1, 4), Rational(1, 8), 3, 2}}) {
        RingNorm a = build_norm(tw, NormKind::ideal_adic, J1, c.rho1);
        RingNorm b = build_norm(tw, NormKind::ideal_adic, J2, c.rho2);
        EquivalenceBounds eb = equivalence_bounds(a, b, R);
        CHECK(eb.n1 == 2);
        CHECK(eb.n2 == 1);
        CHECK(eb.exponent_num == c.num);
        CHECK(eb.exponent_den == c.den);
        CHECK(eb.exhaustive);
        CHECK(eb.elements_checked == 16);
        CHECK(eb.holds);

        // Oracle: both bounds raised to the integer power den·n₁.
        const int P = c.den * eb.n1;
        for (std::uint64_t i = 0; i < 16; ++i) {
            Element x = R.element_at(i);
            const Rational v1 = a.value(x), v2 = b.value(x);
            CHECK(power(c.rho2, eb.n2 * P) * power(v1, eb.n2 * c.num * eb.n1) <= power(v2, P));
            CHECK(power(v2, P) <= power(c.rho2, -P) * power(v1, c.num));
        }

        RingNorm same = build_norm(tw, NormKind::ideal_adic, J1, c.rho1);
        EquivalenceBounds trivial = equivalence_bounds(a, same, R);
        CHECK(trivial.n1 == 1);
        CHECK(trivial.n2 == 1);
        CHECK(trivial.holds);
    }
    RingNorm a = build_norm(tw, NormKind::ideal_adic, J1, Rational(1, 2));
    RingNorm b = build_norm(tw, NormKind::ideal_adic, J2, Rational(1, 3));
    CHECK_THROWS_AS(equivalence_bounds(a, b, R), std::invalid_argument);
}
