#include "skew/catalog.hpp"

namespace skew {

ContextPtr twisted_dual_numbers() {
    auto R = truncated_polynomial(4, 2);
    LinearMap sigma(R->modulus(), {Element{1, 0}, Element{0, 3}}, 2);
    return make_context(R, sigma, sigma_minus_id(sigma));
}

ContextPtr untwisted(Int q) { return make_commutative_context(modular_integers(q)); }

ContextPtr frobenius_field(Int q) {
    auto F = finite_field(q);
    return make_context(F, frobenius(*F), LinearMap::zero(F->modulus(), F->dim()));
}

namespace {

Element unipotent_conjugator(const CoefficientRing& M) {
    const MatrixData& md = *M.matrix();
    Element c = M.zero();
    c[md.index(0, 0, 0)] = 1;
    c[md.index(0, 1, 0)] = 1;
    c[md.index(1, 1, 0)] = 1;
    return c;
}

}  // namespace

ContextPtr inner_matrix_ring() {
    auto M = matrix_ring(2, 2);
    LinearMap sigma = inner_automorphism(*M, unipotent_conjugator(*M));
    return make_context(M, sigma, LinearMap::zero(M->modulus(), M->dim()));
}

ContextPtr inner_matrix_ring_with_derivation() {
    auto M = matrix_ring(2, 2);
    LinearMap sigma = inner_automorphism(*M, unipotent_conjugator(*M));
    return make_context(M, sigma, sigma_minus_id(sigma));
}

ContextPtr inverted_cyclic_group_algebra() {
    FiniteGroup H = FiniteGroup::cyclic(4);
    auto R = group_algebra(4, H);
    std::vector<std::size_t> images;
    for (std::size_t g = 0; g < H.order(); ++g) images.push_back(H.inv(g));
    LinearMap sigma = group_automorphism(*R, images);
    return make_context(R, sigma, sigma_minus_id(sigma));
}

ContextPtr swapped_product() {
    auto F = finite_field(2);
    auto P = product_ring({F, F});
    LinearMap sigma(P->modulus(), {Element{0, 1}, Element{1, 0}}, 2);
    return make_context(P, sigma, LinearMap::zero(P->modulus(), 2));
}

std::vector<CatalogEntry> ring_law_catalog() {
    return {
        {"z4", "Z/4, sigma = id, delta = 0", untwisted(4)},
        {"f4-frobenius", "F_4, sigma = Frobenius, delta = 0", frobenius_field(4)},
        {"z4-dual-twisted", "Z/4[x]/(x^2), sigma(x) = 3x, delta = sigma - id", twisted_dual_numbers()},
        {"m2f2-inner", "M_2(F_2), sigma = Int([[1,1],[0,1]]), delta = 0", inner_matrix_ring()},
        {"z4-c4-inverting", "Z/4[C4], sigma(h) = h^-1, delta = sigma - id", inverted_cyclic_group_algebra()},
    };
}

std::vector<CatalogEntry> localisation_catalog() {
    auto entries = ring_law_catalog();
    entries.push_back({"f2xf2-swap", "F_2 x F_2, sigma swaps factors, delta = 0", swapped_product()});
    return entries;
}

}  // namespace skew
