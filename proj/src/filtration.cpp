#include "skew/filtration.hpp"

#include <stdexcept>

namespace skew {

const Submodule& Filtration::level(int k) const {
    if (k < 0) throw std::invalid_argument("negative filtration level");
    if (k >= static_cast<int>(levels.size())) return levels.back();
    return levels[static_cast<std::size_t>(k)];
}

Filtration jac_adic_filtration(const CoefficientRing& R) {
    Filtration f;
    f.kind = "jac_adic";
    for (int k = 0; k <= R.jac_nilpotency(); ++k) f.levels.push_back(R.jac_power(k));
    if (f.levels.size() == 1) f.levels.push_back(R.jac_power(1));
    return f;
}

namespace {

Submodule span_products(const CoefficientRing& R, const Submodule& a, const Submodule& b) {
    std::vector<Element> gens;
    for (const auto& x : a.rows())
        for (const auto& y : b.rows()) gens.push_back(R.mul(x, y));
    return Submodule::span(R.modulus(), R.dim(), gens);
}

}  // namespace

Filtration standard_filtration(const TwistData& tw, int depth) {
    if (depth < 1) throw std::invalid_argument("filtration depth must be at least 1");
    const auto& R = *tw.ring;
    auto V = delta_word_images(tw);
    auto v_at = [&](int m) -> const Submodule& {
        return V[static_cast<std::size_t>(std::min<int>(m, static_cast<int>(V.size()) - 1))];
    };
    // Q[l] spans all products over compositions of l.
    std::vector<Submodule> Q{R.whole()};
    Filtration f;
    f.kind = "standard";
    f.levels.push_back(R.whole());
    for (int l = 1;; ++l) {
        Submodule q = v_at(l);
        for (int m = 1; m < l; ++m) q = q + span_products(R, v_at(m), Q[static_cast<std::size_t>(l - m)]);
        Q.push_back(q);
        std::vector<Element> gens(q.rows().begin(), q.rows().end());
        Submodule I = R.ideal(gens);
        if (I == f.levels.back() && l > 1) return f;
        if (l > depth) {
            f.depth_exhausted = true;
            return f;
        }
        f.levels.push_back(std::move(I));
        if (l == 1 && f.levels.back() == f.levels.front()) return f;
    }
}

Filtration explicit_filtration(const CoefficientRing& R, const std::vector<Submodule>& levels) {
    Filtration f;
    f.kind = "explicit";
    f.levels.push_back(R.whole());
    for (const auto& I : levels) {
        if (!R.is_ideal(I)) throw std::invalid_argument("filtration level is not a two-sided ideal");
        if (!f.levels.back().contains(I)) throw std::invalid_argument("filtration levels do not descend");
        f.levels.push_back(I);
    }
    while (f.levels.size() > 2 && f.levels[f.levels.size() - 1] == f.levels[f.levels.size() - 2]) f.levels.pop_back();
    if (f.levels.size() == 1) f.levels.push_back(R.whole());
    return f;
}

AssumptionReport check_assumptions(const TwistData& tw, const Filtration& filt) {
    const auto& R = *tw.ring;
    AssumptionReport rep;
    rep.separated = filt.separated();
    const int L = filt.stabilisation_index();
    auto fail = [&](const std::string& msg, const Element& w) {
        rep.failure = msg;
        rep.witness = w;
        return rep;
    };
    for (int k = 0; k <= L; ++k) {
        const Submodule& I = filt.level(k);
        for (const auto& a : I.rows()) {
            for (std::size_t i = 0; i < R.dim(); ++i) {
                if (!I.contains(R.mul(R.basis(i), a)) || !I.contains(R.mul(a, R.basis(i))))
                    return fail("level " + std::to_string(k) + " is not a two-sided ideal", a);
            }
            if (!I.contains(tw.sigma.apply(a))) return fail("level " + std::to_string(k) + " is not sigma-stable", a);
            if (!I.contains(tw.sigma_prime.apply(a)))
                return fail("level " + std::to_string(k) + " is not sigma'-stable", a);
            if (!I.contains(tw.delta.apply(a))) return fail("level " + std::to_string(k) + " is not delta-stable", a);
        }
        for (int l = 0; l <= L; ++l) {
            const Submodule& target = filt.level(k + l);
            for (const auto& a : I.rows())
                for (const auto& b : filt.level(l).rows())
                    if (!target.contains(R.mul(a, b)))
                        return fail("I_" + std::to_string(k) + " I_" + std::to_string(l) + " not in I_" +
                                        std::to_string(k + l),
                                    R.mul(a, b));
        }
        if (k > 0 && !filt.level(k - 1).contains(I)) return fail("levels do not descend", I.rows().front());
    }
    rep.stable = true;
    rep.assumption_I = rep.stable && rep.separated && filt.level(0).is_whole();
    // δ(R) ⊆ I_1, checked on the basis.
    bool si0 = true;
    for (std::size_t i = 0; i < R.dim() && si0; ++i)
        if (!filt.level(1).contains(tw.delta.image(i))) {
            si0 = false;
            rep.witness = tw.delta.image(i);
            rep.failure = "delta(" + R.basis_names()[i] + ") not in I_1";
        }
    rep.assumption_SI0 = rep.assumption_I && si0;
    bool si = true;
    for (int k = 0; k <= L && si; ++k)
        for (const auto& a : filt.level(k).rows())
            if (!filt.level(k + 1).contains(tw.delta.apply(a))) {
                si = false;
                if (!rep.witness) {
                    rep.witness = tw.delta.apply(a);
                    rep.failure = "delta(I_" + std::to_string(k) + ") not in I_" + std::to_string(k + 1);
                }
                break;
            }
    rep.assumption_SI = rep.assumption_I && si;
    return rep;
}

}  // namespace skew
