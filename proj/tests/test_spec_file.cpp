#include <doctest.h>

#include "skew/catalog.hpp"
#include "skew/spec_file.hpp"
#include "skew/suites.hpp"

using namespace skew;

namespace {

/// Same twist, checked on every basis element.
bool same_twist(const TwistData& a, const TwistData& b) {
    const auto& R = *a.ring;
    for (std::size_t i = 0; i < R.dim(); ++i) {
        if (a.sigma.apply(R.basis(i)) != b.sigma.apply(R.basis(i))) return false;
        if (a.delta.apply(R.basis(i)) != b.delta.apply(R.basis(i))) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("shorthand ring with images matches the catalog") {
    RingSpec spec = parse_ring_spec(R"(
        # twisted dual numbers
        [ring]
        shorthand = Z/4[x]/(x^2)
        [sigma]
        kind = images
        x = 3x
        [delta]
        kind = sigma_minus_id
    )");
    ContextPtr ref = twisted_dual_numbers();
    CHECK(spec.context->ring().dim() == 2);
    CHECK(same_twist(spec.context->twist(), ref->twist()));
    CHECK(spec.context->top_level() == ref->top_level());
    CHECK_FALSE(spec.group);
}

TEST_CASE("custom ring by structure constants") {
    RingSpec spec = parse_ring_spec(R"(
        [ring]
        modulus = 4
        basis = 1, x
        one = 1
        x*x = 0
        jacobson = 2, x
        [sigma]
        kind = matrix
        matrix = 1 0; 0 3
        [delta]
        kind = sigma_minus_id
    )");
    const auto& R = spec.context->ring();
    Element x = R.basis(1);
    CHECK(R.mul(x, x) == R.zero());
    CHECK(R.mul(R.from_int(3), x) == R.scale(3, x));
    CHECK(R.jac_nilpotency() == 3);
    CHECK(same_twist(spec.context->twist(), twisted_dual_numbers()->twist()));
}

TEST_CASE("integers in a custom ring are multiples of the declared unit") {
    // F_2 x F_2 written with the idempotents e, f; the unit is e + f.
    RingSpec spec = parse_ring_spec(R"(
        [ring]
        modulus = 2
        basis = e f
        one = e+f
        e*e = e
        f*f = f
        [sigma]
        kind = images
        e = f
        f = e
    )");
    const auto& R = spec.context->ring();
    CHECK(R.one() == Element{1, 1});
    CHECK(parse_coefficient(R, "1") == Element{1, 1});
    CHECK(spec.context->twist().sigma_order == 2);
}

TEST_CASE("explicit and standard filtrations") {
    RingSpec std_spec = parse_ring_spec(R"(
        [ring]
        shorthand = Z/4[x]/(x^2)
        [sigma]
        kind = images
        x = 3x
        [delta]
        kind = sigma_minus_id
        [filtration]
        kind = standard
    )");
    // δ(x) = 2x generates the first level and its square vanishes.
    CHECK(std_spec.context->filtration().kind == "standard");
    CHECK(std_spec.context->top_level() == 2);

    RingSpec exp_spec = parse_ring_spec(R"(
        [ring]
        shorthand = Z/4
        [filtration]
        kind = explicit
        level = 2
        level = 0
    )");
    CHECK(exp_spec.context->top_level() == 2);
}

TEST_CASE("group section builds the Iwasawa datum") {
    RingSpec spec = parse_ring_spec(R"(
        [group]
        degree = 4
        generator = (1 2 3 4)
        gamma = (2 4)
        p = 2
        m = 2
    )");
    REQUIRE(spec.group);
    CHECK(spec.group->H.order() == 4);
    CHECK(spec.group->delta_in_jac);
    CHECK(same_twist(spec.context->twist(), inverted_cyclic_group_algebra()->twist()));
}

TEST_CASE("ring file errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_ring_spec(text);
        } catch (const SpecError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("[ring]\nshorthand = Z/4\n[sigma]\nkind = nonsense\n") == 4);
    CHECK(line_of("[ring]\nshorthand = Z/4\nbogus = 1\n") == 3);
    CHECK(line_of("[ring]\nmodulus = 4\nbasis = 1 x\none = 1\ny*x = 0\n") == 5);
    // σ(x) = 2x is not an automorphism.
    CHECK(line_of("[ring]\nshorthand = Z/4[x]/(x^2)\n[sigma]\nkind = images\nx = 2x\n") > 0);
    CHECK_THROWS_AS(parse_ring_spec("[ring]\nshorthand = Z/4\n[group]\np = 2\n"), SpecError);
}

TEST_CASE("catalog names resolve") {
    for (const auto& e : localisation_catalog()) CHECK(resolve_ring(e.name).context->ring().dim() == e.context->ring().dim());
    CHECK_THROWS(resolve_ring("no-such-ring-or-file"));
}

TEST_CASE("matrix rows are images of basis elements") {
    Modulus mod(2, 2);
    LinearMap m = parse_matrix(mod, 2, "1 2; 0 3");
    CHECK(m.apply(Element{1, 0}) == Element{1, 2});
    CHECK(m.apply(Element{0, 1}) == Element{0, 3});
    CHECK_THROWS(parse_matrix(mod, 2, "1 2 3; 0 1"));
}

TEST_CASE("property suites pass and are reproducible") {
    for (const auto& name : suite_names()) {
        SuiteResult a = run_suite(name, 11, 20);
        SuiteResult b = run_suite(name, 11, 20);
        CHECK_MESSAGE(a.passed(), a.summary());
        CHECK(a.summary() == b.summary());
    }
    CHECK_THROWS_AS(run_suite("nonexistent", 1), std::invalid_argument);
}
