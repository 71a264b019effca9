#include "skew/twist.hpp"

#include <stdexcept>

namespace skew {

namespace {

std::vector<LinearMap> sigma_powers(const TwistData& tw) {
    std::vector<LinearMap> pw{LinearMap::identity(tw.ring->modulus(), tw.ring->dim())};
    for (int a = 1; a < tw.sigma_order; ++a) pw.push_back(tw.sigma.after(pw.back()));
    return pw;
}

}  // namespace

std::vector<Submodule> delta_word_images(const TwistData& tw) {
    const auto& R = *tw.ring;
    auto pw = sigma_powers(tw);
    std::vector<Submodule> chain{R.whole()};
    for (;;) {
        std::vector<Element> gens;
        for (const auto& row : chain.back().rows()) {
            Element d = tw.delta.apply(row);
            for (const auto& s : pw) gens.push_back(s.apply(d));
        }
        Submodule next = Submodule::span(R.modulus(), R.dim(), gens);
        if (next == chain.back()) return chain;
        chain.push_back(std::move(next));
    }
}

TwistData build_twist(const RingPtr& Rp, const LinearMap& sigma, const LinearMap& delta) {
    const auto& R = *Rp;
    const std::size_t n = R.dim();
    if (sigma.dim_in() != n || sigma.dim_out() != n || delta.dim_in() != n || delta.dim_out() != n)
        throw std::invalid_argument("twist matrices have wrong dimension");
    TwistData tw;
    tw.ring = Rp;
    tw.sigma = sigma;
    tw.delta = delta;

    if (sigma.apply(R.one()) != R.one()) throw std::invalid_argument("sigma(1) != 1");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sigma.apply(R.basis_product(i, j)) != R.mul(sigma.image(i), sigma.image(j)))
                throw std::invalid_argument("sigma is not multiplicative on (" + R.basis_names()[i] + ", " +
                                            R.basis_names()[j] + ")");
    auto inv = sigma.inverse();
    if (!inv) throw std::invalid_argument("sigma is not bijective");
    tw.sigma_prime = *inv;
    tw.delta_prime = -delta.after(tw.sigma_prime);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Element lhs = delta.apply(R.basis_product(i, j));
            Element rhs = R.add(R.mul(sigma.image(i), delta.image(j)), R.mul(delta.image(i), R.basis(j)));
            if (lhs != rhs)
                throw std::invalid_argument("derivation law fails on (" + R.basis_names()[i] + ", " +
                                            R.basis_names()[j] + ")");
            Element lhs2 = tw.delta_prime.apply(R.basis_product(i, j));
            Element rhs2 = R.add(R.mul(tw.delta_prime.image(i), tw.sigma_prime.image(j)),
                                 R.mul(R.basis(i), tw.delta_prime.image(j)));
            if (lhs2 != rhs2)
                throw std::invalid_argument("right derivation law fails for delta' on (" + R.basis_names()[i] +
                                            ", " + R.basis_names()[j] + ")");
        }
    if (!(sigma.apply(R.jacobson()) == R.jacobson())) throw std::invalid_argument("sigma does not preserve Jac(R)");

    LinearMap id = LinearMap::identity(R.modulus(), n);
    LinearMap pw = sigma;
    tw.sigma_order = 1;
    while (!(pw == id)) {
        pw = sigma.after(pw);
        if (++tw.sigma_order > 1000000) throw std::invalid_argument("sigma has excessive order");
    }

    auto chain = delta_word_images(tw);
    if (!chain.back().is_zero()) throw std::invalid_argument("delta is not sigma-nilpotent");
    tw.word_nilpotency_K = static_cast<int>(chain.size()) - 1;
    if (tw.word_nilpotency_K == 0) tw.word_nilpotency_K = 1;

    LinearMap dp = delta, dpp = tw.delta_prime;
    tw.nilpotency_M = 1;
    while (!dp.is_zero() || !dpp.is_zero()) {
        dp = delta.after(dp);
        dpp = tw.delta_prime.after(dpp);
        ++tw.nilpotency_M;
    }

    const Submodule& jac = R.jacobson();
    for (int s = 1;; ++s) {
        const Submodule& js = R.jac_power(s);
        if (jac.contains(delta.apply(js)) && jac.contains(tw.delta_prime.apply(js))) {
            tw.continuity_s = s;
            break;
        }
    }
    return tw;
}

LinearMap sigma_minus_id(const LinearMap& sigma) {
    return sigma - LinearMap::identity(sigma.modulus(), sigma.dim_in());
}

LinearMap inner_automorphism(const CoefficientRing& R, const Element& u) {
    auto inv = R.inverse(u);
    if (!inv) throw std::invalid_argument("inner automorphism needs a unit");
    std::vector<Element> ims;
    for (std::size_t i = 0; i < R.dim(); ++i) ims.push_back(R.mul(R.mul(u, R.basis(i)), *inv));
    return LinearMap(R.modulus(), std::move(ims), R.dim());
}

LinearMap frobenius(const CoefficientRing& R) {
    if (!R.field()) throw std::invalid_argument("Frobenius needs a finite field or a matrix ring over one");
    const auto p = static_cast<std::uint64_t>(R.field()->p);
    std::vector<Element> ims;
    if (R.family() == Family::finite_field) {
        for (std::size_t i = 0; i < R.dim(); ++i) ims.push_back(R.power(R.basis(i), p));
        return LinearMap(R.modulus(), std::move(ims), R.dim());
    }
    const MatrixData& md = *R.matrix();
    Int q = 1;
    for (int k = 0; k < md.field.degree; ++k) q *= md.field.p;
    auto F = finite_field(q);
    ims.assign(R.dim(), R.zero());
    for (int i = 0; i < md.n; ++i)
        for (int j = 0; j < md.n; ++j)
            for (int k = 0; k < md.field.degree; ++k) {
                Element fk = F->power(F->basis(static_cast<std::size_t>(k)), p);
                Element e = R.zero();
                for (int t = 0; t < md.field.degree; ++t) e[md.index(i, j, t)] = fk[static_cast<std::size_t>(t)];
                ims[md.index(i, j, k)] = e;
            }
    return LinearMap(R.modulus(), std::move(ims), R.dim());
}

LinearMap group_automorphism(const CoefficientRing& R, const std::vector<std::size_t>& images) {
    if (!R.group() || images.size() != R.dim()) throw std::invalid_argument("group automorphism needs a group algebra");
    std::vector<Element> ims;
    for (std::size_t g = 0; g < R.dim(); ++g) ims.push_back(R.basis(images[g]));
    return LinearMap(R.modulus(), std::move(ims), R.dim());
}

}  // namespace skew
