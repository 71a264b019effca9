#pragma once

#include <string>
#include <vector>

#include "skew/series.hpp"

namespace skew {

struct CatalogEntry {
    std::string name;
    std::string description;
    ContextPtr context;
};

/// (ℤ/4)[x]/(x²) with σ(x) = 3x and δ = σ − id.
ContextPtr twisted_dual_numbers();
/// ℤ/q with σ = id and δ = 0.
ContextPtr untwisted(Int q);
/// 𝔽_q with Frobenius and δ = 0.
ContextPtr frobenius_field(Int q);
/// M_2(𝔽_2) with σ conjugation by [[1,1],[0,1]] and δ = 0.
ContextPtr inner_matrix_ring();
/// M_2(𝔽_2) with σ conjugation by [[1,1],[0,1]] and δ = σ − id.
ContextPtr inner_matrix_ring_with_derivation();
/// (ℤ/4)[C₄] with σ(h) = h⁻¹ and δ = σ − id.
ContextPtr inverted_cyclic_group_algebra();
/// 𝔽_2 × 𝔽_2 with σ swapping the factors.
ContextPtr swapped_product();

/// The rings exercised by the ring-law suites.
std::vector<CatalogEntry> ring_law_catalog();
/// Rings whose residue field data supports the ore pipeline.
std::vector<CatalogEntry> localisation_catalog();

}  // namespace skew
