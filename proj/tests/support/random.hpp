#pragma once

#include <random>

#include "skew/series.hpp"

namespace skew::testing {

inline Element random_element(std::mt19937_64& rng, const CoefficientRing& R) {
    std::uniform_int_distribution<Int> d(0, R.modulus().q() - 1);
    Element e(R.dim());
    for (auto& x : e) x = d(rng);
    return e;
}

/// Exact series with each exponent in [lo, hi) present with probability 2/3.
inline SkewSeries random_series(std::mt19937_64& rng, const ContextPtr& ctx, int lo, int hi,
                                Form form = Form::left, int level = -1) {
    if (level < 0) level = ctx->top_level();
    std::map<int, Element> terms;
    std::uniform_int_distribution<int> coin(0, 2);
    for (int e = lo; e < hi; ++e)
        if (coin(rng) != 0) terms.emplace(e, random_element(rng, ctx->ring()));
    return SkewSeries::from_terms(ctx, level, form, std::move(terms));
}

}  // namespace skew::testing
