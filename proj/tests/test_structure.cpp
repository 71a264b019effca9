#include <doctest.h>

#include <random>

#include "skew/catalog.hpp"
#include "skew/structure.hpp"
#include "support/random.hpp"

using namespace skew;
using skew::testing::random_element;
using skew::testing::random_series;

namespace {

Element el(const CoefficientRing& R, const std::string& s) { return parse_coefficient(R, s); }

SkewSeries S(const ContextPtr& ctx, const std::string& s) { return SkewSeries::parse(ctx, ctx->top_level(), s); }

ContextPtr frobenius_matrix_ring() {
    auto M = matrix_ring(2, 4);
    return make_context(M, frobenius(*M), LinearMap::zero(M->modulus(), M->dim()));
}

Element random_invertible(std::mt19937_64& rng, const CoefficientRing& R) {
    while (true) {
        Element c = random_element(rng, R);
        if (R.is_unit(c)) return c;
    }
}

}  // namespace

TEST_CASE("reduction modulo the radical") {
    auto ctx = twisted_dual_numbers();
    ResidueContext rc = residue_context(ctx);
    CHECK(rc.context->ring().dim() == 1);
    CHECK(rc.context->twist().delta_is_zero());
    SkewSeries f = S(ctx, "3x*t^2 + (2+x)*t^1 + 3");
    CHECK(rc.reduce(f) == S(rc.context, "1"));
    SkewSeries lifted = rc.lift(S(rc.context, "t^3 + 1"), ctx, ctx->top_level());
    CHECK(rc.reduce(lifted) == S(rc.context, "t^3 + 1"));

    auto field = frobenius_field(4);
    CHECK(residue_context(field).context == field);
}

TEST_CASE("cyclic decomposition of the swapped product") {
    auto ctx = swapped_product();
    const auto& R = ctx->ring();
    CyclicDecomposition dec = decompose_cyclic(R, ctx->twist().sigma);
    REQUIRE(dec.blocks.size() == 1);
    const CyclicBlock& b = dec.blocks[0];
    CHECK(b.length() == 2);
    CHECK(b.unit == R.one());
    CHECK(dec.report(R).find("phi0=id") != std::string::npos);

    CyclicDecomposition trivial = decompose_cyclic(R, LinearMap::identity(R.modulus(), R.dim()));
    CHECK(trivial.blocks.size() == 2);
    for (const auto& blk : trivial.blocks) CHECK(blk.length() == 1);

    // A local ring is a single block.
    CHECK(decompose_cyclic(*truncated_polynomial(4, 2), LinearMap::identity(Modulus(2, 2), 2)).blocks.size() == 1);
}

TEST_CASE("flattening intertwines sigma with the cycled twist") {
    auto F = finite_field(4);
    auto P = product_ring({F, F, F});
    const auto& R = *P;
    // σ(a, b, c) = (Frob c, a, b).
    LinearMap frob = frobenius(*F);
    std::vector<Element> ims(R.dim(), R.zero());
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 2; ++i) {
            Element img = R.zero();
            const std::size_t dst = (k + 1) % 3;
            Element src = dst == 0 ? frob.apply(F->basis(i)) : F->basis(i);
            for (std::size_t j = 0; j < 2; ++j) img[R.component_offset(dst) + j] = src[j];
            ims[R.component_offset(k) + i] = img;
        }
    LinearMap sigma(R.modulus(), ims, R.dim());
    CyclicDecomposition dec = decompose_cyclic(R, sigma);
    REQUIRE(dec.blocks.size() == 1);
    const CyclicBlock& b = dec.blocks[0];
    CHECK(b.length() == 3);
    CHECK(dec.report(R).find("phi0=nontrivial") != std::string::npos);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Element r = random_element(rng, R);
        CHECK(flatten(b, sigma.apply(r)) == cycle_twist(b, flatten(b, r)));
        // (π∘φ)^n applies φ₀ to every component.
        std::vector<Element> tuple = flatten(b, r), cycled = tuple;
        for (int i = 0; i < b.length(); ++i) cycled = cycle_twist(b, cycled);
        for (std::size_t i = 0; i < tuple.size(); ++i) CHECK(cycled[i] == b.phi0.apply(tuple[i]));
    }
}

TEST_CASE("inner factorisation of matrix automorphisms") {
    auto inner = inner_matrix_ring();
    const auto& M = inner->ring();
    InnerFactorisation f = factor_matrix_automorphism(M, inner->twist().sigma);
    CHECK(f.gamma_exponent == 0);
    CHECK(f.C == el(M, "e11 + e12 + e22"));
    CHECK(verify_factorisation(M, inner->twist().sigma, f));

    auto frob = frobenius_matrix_ring();
    const auto& M4 = frob->ring();
    InnerFactorisation g = factor_matrix_automorphism(M4, frob->twist().sigma);
    CHECK(g.gamma_exponent == 1);
    CHECK(g.C == M4.one());

    // Int(C)∘Frobenius recovers C up to the row-major normalisation.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Element C = random_invertible(rng, M4);
        LinearMap sigma = inner_automorphism(M4, C).after(frobenius(M4));
        InnerFactorisation h = factor_matrix_automorphism(M4, sigma);
        CHECK(h.gamma_exponent == 1);
        CHECK(verify_factorisation(M4, sigma, h));
        // h.C·C⁻¹ commutes with everything, so it is a scalar.
        Element z = M4.mul(h.C, *M4.inverse(C));
        for (std::size_t i = 0; i < M4.dim(); ++i) CHECK(M4.mul(z, M4.basis(i)) == M4.mul(M4.basis(i), z));
    }
}

TEST_CASE("transport along t -> u t") {
    auto M = matrix_ring(2, 2);
    const auto& R = *M;
    LinearMap zero = LinearMap::zero(R.modulus(), R.dim());
    Element u = el(R, "e11 + e12 + e22");
    auto target = make_context(M, LinearMap::identity(R.modulus(), R.dim()), zero);
    auto source = make_context(M, inner_automorphism(R, u), zero);
    Element uinv = *R.inverse(u);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        SkewSeries a = random_series(rng, source, -2, 3);
        SkewSeries b = random_series(rng, source, -2, 3);
        SkewSeries ta = transport_inner(a, u, target), tb = transport_inner(b, u, target);
        CHECK(transport_inner(a * b, u, target) == ta * tb);
        CHECK(transport_inner(a + b, u, target) == ta + tb);
        CHECK(transport_inner(ta, uinv, source) == a);
    }
    CHECK_THROWS_AS(transport_inner(S(source, "1"), u, source), std::invalid_argument);
}

TEST_CASE("matrix-skew isomorphism is multiplicative") {
    for (auto ctx : {inner_matrix_ring(), frobenius_matrix_ring()}) {
        MatrixSkewIsomorphism iso(ctx);
        CHECK(iso.size() == 2);
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 15; ++trial) {
            SkewSeries a = random_series(rng, ctx, -1, 3);
            SkewSeries b = random_series(rng, ctx, -1, 3);
            auto ma = iso.to_matrix(a), mb = iso.to_matrix(b);
            CHECK(iso.from_matrix(ma) == a);
            auto prod = iso.to_matrix(a * b);
            auto expected = iso.multiply(ma, mb);
            for (std::size_t i = 0; i < prod.size(); ++i) CHECK(prod[i] == expected[i]);
        }
    }
}

TEST_CASE("geometric-series inverse of a unit") {
    auto ctx = twisted_dual_numbers();
    SkewSeries u = S(ctx, "1 + x");
    SkewSeries inv = invert_unit_series(u, 6);
    CHECK(inv == S(ctx, "1 - x + O(t^6)"));
    SkewSeries v = S(ctx, "3 + t^1 + x*t^2");
    SkewSeries w = invert_unit_series(v, 8);
    CHECK(w.bound() == 8);
    CHECK((w * v).agrees_with(SkewSeries::one(ctx, ctx->top_level())));
    CHECK((v * w).agrees_with(SkewSeries::one(ctx, ctx->top_level())));
    CHECK_THROWS_AS(invert_unit_series(S(ctx, "2 + t^1"), 4), std::invalid_argument);
}

TEST_CASE("Weierstrass preparation") {
    auto F2 = make_commutative_context(finite_field(2));
    WeierstrassFactorisation w = weierstrass(S(F2, "t^2 + t^3"));
    CHECK(w.n == 2);
    CHECK(w.unit == S(F2, "1 + t^1"));
    CHECK(w.unit * S(F2, "t^2") == S(F2, "t^2 + t^3"));

    auto F4 = frobenius_field(4);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        SkewSeries f = random_series(rng, F4, 0, 12).truncated(12);
        if (f.is_zero()) continue;
        WeierstrassFactorisation p = weierstrass(f);
        CHECK(p.n == order_leading(f).order);
        CHECK(F4->ring().is_unit(p.unit.coefficient(0)));
        CHECK(p.unit * SkewSeries::t_power(F4, F4->top_level(), p.n) == f);
        CHECK((p.unit * p.unit_inverse).agrees_with(SkewSeries::one(F4, F4->top_level())));
    }
    CHECK_THROWS_AS(weierstrass(S(F4, "O(t^5)")), ZeroElementError);
    CHECK_THROWS_AS(weierstrass(S(twisted_dual_numbers(), "1")), std::invalid_argument);
}

TEST_CASE("product rings split factorwise") {
    CHECK_THROWS_WITH_AS(split_product(swapped_product()), "twist moves a product factor", std::invalid_argument);

    auto F2 = finite_field(2), F4 = finite_field(4);
    auto P = product_ring({F2, F4});
    LinearMap sigma = LinearMap::identity(P->modulus(), P->dim());
    const std::size_t off = P->component_offset(1);
    LinearMap frob = frobenius(*F4);
    std::vector<Element> ims = sigma.images();
    for (std::size_t i = 0; i < 2; ++i) {
        Element img = P->zero();
        for (std::size_t j = 0; j < 2; ++j) img[off + j] = frob.apply(F4->basis(i))[j];
        ims[off + i] = img;
    }
    auto ctx = make_context(P, LinearMap(P->modulus(), ims, P->dim()), LinearMap::zero(P->modulus(), P->dim()));
    auto parts = split_product(ctx);
    REQUIRE(parts.size() == 2);
    CHECK(parts[1]->twist().sigma == frob);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        SkewSeries a = random_series(rng, ctx, -2, 3), b = random_series(rng, ctx, -2, 3);
        std::vector<SkewSeries> pa, pab;
        for (std::size_t i = 0; i < 2; ++i) {
            pa.push_back(project_to_factor(a, i, parts[i]));
            pab.push_back(project_to_factor(a * b, i, parts[i]));
            CHECK(pab[i] == pa[i] * project_to_factor(b, i, parts[i]));
        }
        CHECK(join_factors(ctx, pa) == a);
    }
}
