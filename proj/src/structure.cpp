#include "skew/structure.hpp"

#include <sstream>

namespace skew {

namespace {

LinearMap induced_map(const Residue& res, const CoefficientRing& R, const LinearMap& f) {
    const auto& Rb = *res.ring;
    std::vector<Element> ims;
    for (std::size_t i = 0; i < Rb.dim(); ++i) ims.push_back(res.reduce(f.apply(res.lift(Rb.basis(i), R.dim()))));
    return LinearMap(Rb.modulus(), std::move(ims), Rb.dim());
}

}  // namespace

ResidueContext residue_context(const ContextPtr& ctx) {
    const CoefficientRing& R = ctx->ring();
    const TwistData& tw = ctx->twist();
    if (!(tw.sigma.apply(R.jacobson()) == R.jacobson()))
        throw std::invalid_argument("sigma does not preserve the radical");
    if (!R.jacobson().contains(tw.delta.apply(R.jacobson())))
        throw std::invalid_argument("delta does not preserve the radical");
    ResidueContext rc;
    rc.residue = residue_ring(ctx->ring_ptr());
    if (rc.residue.identity) {
        rc.context = ctx;
        return rc;
    }
    rc.context = make_context(rc.residue.ring, induced_map(rc.residue, R, tw.sigma), induced_map(rc.residue, R, tw.delta));
    return rc;
}

SkewSeries ResidueContext::reduce(const SkewSeries& f) const {
    SkewSeries l = f.in_form(Form::left);
    std::map<int, Element> terms;
    for (const auto& [e, c] : l.coefficients()) terms.emplace(e, residue.reduce(c));
    return SkewSeries::from_terms(context, context->top_level(), Form::left, std::move(terms), l.bound());
}

SkewSeries ResidueContext::lift(const SkewSeries& fbar, const ContextPtr& target, int level) const {
    SkewSeries l = fbar.in_form(Form::left);
    std::map<int, Element> terms;
    for (const auto& [e, c] : l.coefficients()) terms.emplace(e, residue.lift(c, target->ring().dim()));
    return SkewSeries::from_terms(target, level, Form::left, std::move(terms), l.bound());
}

CyclicDecomposition decompose_cyclic(const CoefficientRing& R, const LinearMap& sigma) {
    const auto& ids = R.block_idempotents();
    if (ids.empty()) throw std::invalid_argument("simple-block data unavailable for this ring");
    std::vector<bool> used(ids.size(), false);
    auto find = [&](const Element& e) -> std::size_t {
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (ids[i] == e) return i;
        throw std::invalid_argument("sigma does not permute the block idempotents");
    };
    CyclicDecomposition out;
    for (std::size_t start = 0; start < ids.size(); ++start) {
        if (used[start]) continue;
        CyclicBlock b;
        std::size_t cur = start;
        do {
            used[cur] = true;
            b.members.push_back(cur);
            b.idempotents.push_back(ids[cur]);
            cur = find(sigma.apply(ids[cur]));
        } while (cur != start);
        const auto n = b.idempotents.size();
        b.unit = R.zero();
        for (const auto& e : b.idempotents) b.unit = R.add(b.unit, e);
        for (const auto& e : b.idempotents) b.tau.push_back(sigma.after(R.right_mult(e)));
        b.phi0 = b.tau[0];
        for (std::size_t i = 1; i < n; ++i) b.phi0 = b.tau[i].after(b.phi0);
        for (std::size_t i = 0; i < n; ++i) {
            // τ_n∘…∘τ_{i+1} in 0-based indexing; the empty composite is restriction to R·e_1.
            LinearMap m = R.right_mult(b.idempotents[i]);
            for (std::size_t k = i; k < n && i > 0; ++k) m = b.tau[k].after(m);
            b.psi.push_back(m);
        }
        out.blocks.push_back(std::move(b));
    }
    return out;
}

std::vector<Element> flatten(const CyclicBlock& block, const Element& r) {
    std::vector<Element> out;
    for (const auto& p : block.psi) out.push_back(p.apply(r));
    return out;
}

std::vector<Element> cycle_twist(const CyclicBlock& block, const std::vector<Element>& tuple) {
    const auto n = tuple.size();
    std::vector<Element> phi = tuple;
    phi[0] = block.phi0.apply(tuple[0]);
    std::vector<Element> out(n);
    for (std::size_t i = 0; i < n; ++i) out[(i + 1) % n] = phi[i];
    return out;
}

std::string CyclicDecomposition::report(const CoefficientRing& R) const {
    std::ostringstream os;
    os << "blocks=" << blocks.size() << "\n";
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& blk = blocks[b];
        os << "block=" << b << " length=" << blk.length() << " unit=" << format_coefficient(R, blk.unit);
        bool phi_id = true;
        for (std::size_t i = 0; i < R.dim(); ++i)
            if (blk.phi0.apply(R.basis(i)) != R.mul(R.basis(i), blk.idempotents[0])) phi_id = false;
        os << " phi0=" << (phi_id ? "id" : "nontrivial") << "\n";
    }
    return os.str();
}

namespace {

int field_degree(const CoefficientRing& M) { return M.field()->degree; }

/// F_p-nullspace of S ↦ σ(A)·S − S·γ(A) over all basis elements A.
std::vector<Element> intertwiners(const CoefficientRing& M, const LinearMap& sigma, const LinearMap& gamma) {
    const std::size_t n = M.dim();
    std::vector<std::vector<Int>> rows;
    for (std::size_t a = 0; a < n; ++a) {
        LinearMap L = M.left_mult(sigma.apply(M.basis(a))) - M.right_mult(gamma.apply(M.basis(a)));
        // Row i of the system is coordinate i of L(S).
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Int> row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = L.image(j)[i];
            rows.push_back(std::move(row));
        }
    }
    std::vector<Element> out;
    for (auto& v : nullspace_mod_p(M.modulus().p(), rows, n)) out.emplace_back(v.begin(), v.end());
    return out;
}

Element scalar_matrix(const CoefficientRing& M, const Element& field_elem) {
    if (M.family() == Family::finite_field) return field_elem;
    const MatrixData& md = *M.matrix();
    Element s = M.zero();
    for (int i = 0; i < md.n; ++i)
        for (int k = 0; k < md.field.degree; ++k) s[md.index(i, i, k)] = field_elem[static_cast<std::size_t>(k)];
    return s;
}

LinearMap frobenius_power(const LinearMap& f, int e, const Modulus& mod, std::size_t dim) {
    LinearMap g = LinearMap::identity(mod, dim);
    for (int i = 0; i < e; ++i) g = f.after(g);
    return g;
}

}  // namespace

InnerFactorisation factor_matrix_automorphism(const CoefficientRing& M, const LinearMap& sigma) {
    if (!M.field() || (M.family() != Family::finite_field && M.family() != Family::matrix_ring))
        throw std::invalid_argument("inner factorisation needs a matrix ring over a finite field");
    const int d = field_degree(M);
    const LinearMap frob = frobenius(M);
    Int q = 1;
    for (int k = 0; k < d; ++k) q *= M.field()->p;
    auto F = finite_field(q);
    const LinearMap frob_field = frobenius(*F);
    for (int e = 0; e < d; ++e) {
        LinearMap gamma = frobenius_power(frob, e, M.modulus(), M.dim());
        auto sols = intertwiners(M, sigma, gamma);
        for (const auto& S : sols) {
            auto inv = M.inverse(S);
            if (!inv) continue;
            // First nonzero entry in row-major order, as a field element.
            const std::size_t entries = M.dim() / static_cast<std::size_t>(d);
            Element lead;
            for (std::size_t c = 0; c < entries && lead.empty(); ++c) {
                Element f(S.begin() + static_cast<long>(c) * d, S.begin() + static_cast<long>(c + 1) * d);
                if (!is_zero(f)) lead = f;
            }
            Element lead_inv = *F->inverse(lead);
            InnerFactorisation out;
            out.C = M.mul(scalar_matrix(M, lead_inv), S);
            out.C_inverse = *M.inverse(out.C);
            out.gamma_exponent = e;
            out.gamma = gamma;
            out.gamma_on_field = frobenius_power(frob_field, e, F->modulus(), F->dim());
            return out;
        }
    }
    throw std::invalid_argument("sigma is not an automorphism of the matrix ring");
}

bool verify_factorisation(const CoefficientRing& M, const LinearMap& sigma, const InnerFactorisation& f) {
    for (std::size_t i = 0; i < M.dim(); ++i) {
        Element E = M.basis(i);
        if (sigma.apply(E) != M.mul(M.mul(f.C, f.gamma.apply(E)), f.C_inverse)) return false;
    }
    return true;
}

SkewSeries transport_inner(const SkewSeries& a, const Element& u, const ContextPtr& target, InnerSide side) {
    const ContextPtr& src = a.context();
    const CoefficientRing& R = target->ring();
    if (&src->ring() != &R) throw std::invalid_argument("transport needs the same coefficient ring");
    if (!src->twist().delta_is_zero() || !target->twist().delta_is_zero())
        throw std::invalid_argument("transport needs twists without derivation");
    auto uinv = R.inverse(u);
    if (!uinv) throw std::invalid_argument("u is not a unit");
    const LinearMap inner = inner_automorphism(R, u);
    const LinearMap& sig = target->twist().sigma;
    const LinearMap expect = side == InnerSide::left ? inner.after(sig) : sig.after(inner);
    if (!(src->twist().sigma == expect)) throw std::invalid_argument("source twist does not match Int(u) and sigma");

    const int level = a.level();
    SkewSeries t = SkewSeries::t_power(target, level, 1);
    SkewSeries tinv = SkewSeries::t_power(target, level, -1);
    SkewSeries U = SkewSeries::constant(target, level, u);
    SkewSeries Uinv = SkewSeries::constant(target, level, *uinv);
    SkewSeries g = side == InnerSide::left ? U * t : t * U;
    SkewSeries ginv = side == InnerSide::left ? tinv * Uinv : Uinv * tinv;

    SkewSeries al = a.in_form(Form::left);
    SkewSeries out(target, level);
    SkewSeries pos = SkewSeries::one(target, level), neg = SkewSeries::one(target, level);
    int pos_e = 0, neg_e = 0;
    for (const auto& [e, c] : al.coefficients()) {
        const SkewSeries* power;
        if (e >= 0) {
            while (pos_e < e) pos = pos * g, ++pos_e;
            power = &pos;
        } else {
            // Coefficients are visited in increasing exponent, so negative powers are rebuilt.
            neg = SkewSeries::one(target, level);
            for (neg_e = 0; neg_e > e; --neg_e) neg = neg * ginv;
            power = &neg;
        }
        out = out + SkewSeries::constant(target, level, c) * *power;
    }
    if (al.bound()) out = out.truncated(*al.bound());
    return out;
}

MatrixSkewIsomorphism::MatrixSkewIsomorphism(const ContextPtr& source) : source_(source) {
    const CoefficientRing& M = source->ring();
    if (!source->twist().delta_is_zero()) throw std::invalid_argument("matrix-skew isomorphism needs delta = 0");
    factor_ = factor_matrix_automorphism(M, source->twist().sigma);
    n_ = M.matrix() ? M.matrix()->n : 1;
    d_ = M.field()->degree;
    middle_ = make_context(source->ring_ptr(), factor_.gamma, LinearMap::zero(M.modulus(), M.dim()));
    Int q = 1;
    for (int k = 0; k < d_; ++k) q *= M.field()->p;
    auto F = finite_field(q);
    field_ctx_ = make_context(F, factor_.gamma_on_field, LinearMap::zero(F->modulus(), F->dim()));
}

std::vector<SkewSeries> MatrixSkewIsomorphism::to_matrix(const SkewSeries& a) const {
    SkewSeries mid = transport_inner(a, factor_.C, middle_).in_form(Form::left);
    const int level = field_ctx_->top_level();
    std::vector<SkewSeries> out;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            std::map<int, Element> terms;
            for (const auto& [e, c] : mid.coefficients()) {
                Element f(static_cast<std::size_t>(d_));
                for (int k = 0; k < d_; ++k) f[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>((i * n_ + j) * d_ + k)];
                terms.emplace(e, std::move(f));
            }
            out.push_back(SkewSeries::from_terms(field_ctx_, level, Form::left, std::move(terms), mid.bound()));
        }
    return out;
}

SkewSeries MatrixSkewIsomorphism::from_matrix(const std::vector<SkewSeries>& m) const {
    const CoefficientRing& M = source_->ring();
    std::map<int, Element> terms;
    std::optional<int> bound;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const SkewSeries& s = m.at(static_cast<std::size_t>(i * n_ + j));
            if (s.bound()) bound = bound ? std::min(*bound, *s.bound()) : *s.bound();
            const SkewSeries sl = s.in_form(Form::left);
            for (const auto& [e, c] : sl.coefficients()) {
                auto it = terms.try_emplace(e, M.zero()).first;
                for (int k = 0; k < d_; ++k) it->second[static_cast<std::size_t>((i * n_ + j) * d_ + k)] = c[static_cast<std::size_t>(k)];
            }
        }
    SkewSeries mid = SkewSeries::from_terms(middle_, source_->top_level(), Form::left, std::move(terms), bound);
    return transport_inner(mid, factor_.C_inverse, source_);
}

std::vector<SkewSeries> MatrixSkewIsomorphism::multiply(const std::vector<SkewSeries>& a,
                                                        const std::vector<SkewSeries>& b) const {
    std::vector<SkewSeries> out;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            SkewSeries acc(field_ctx_, field_ctx_->top_level());
            for (int k = 0; k < n_; ++k)
                acc = acc + a[static_cast<std::size_t>(i * n_ + k)] * b[static_cast<std::size_t>(k * n_ + j)];
            out.push_back(acc);
        }
    return out;
}

namespace {

SkewSeries geometric_inverse(const SkewSeries& ul, const Element& inv0, int work) {
    const ContextPtr& ctx = ul.context();
    const int level = ul.level();
    SkewSeries c0inv = SkewSeries::constant(ctx, level, inv0);
    SkewSeries one = SkewSeries::one(ctx, level);
    SkewSeries w = one - c0inv * ul;
    SkewSeries sum = one, power = one;
    const int cap = 64 * (work + 1) * (ctx->top_level() + 1) + 64;
    for (int i = 0; !power.is_zero(); ++i) {
        if (i > cap) throw std::runtime_error("geometric series does not terminate");
        power = (power * w).truncated(work);
        sum = sum + power;
    }
    return sum * c0inv;
}

}  // namespace

SkewSeries invert_unit_series(const SkewSeries& u, int N) {
    const CoefficientRing& R = u.ring();
    SkewSeries ul = u.in_form(Form::left);
    if (!ul.truncated(N).in_power_series()) throw std::invalid_argument("not a power series");
    auto inv0 = R.inverse(ul.coefficient(0));
    if (!inv0) throw std::invalid_argument("constant term is not a unit");
    // Moving t past coefficients costs precision when δ ≠ 0, so the working precision grows
    // until the result is known below N or the input runs out.
    int work = N;
    std::optional<int> last;
    while (true) {
        SkewSeries inv = geometric_inverse(ul.truncated(work), *inv0, work);
        if (!inv.bound() || *inv.bound() >= N) return inv.truncated(N);
        if (last && *inv.bound() <= *last) return inv;
        last = inv.bound();
        work += N - *inv.bound() + u.context()->word_nilpotency();
    }
}

WeierstrassFactorisation weierstrass(const SkewSeries& f) {
    const ContextPtr& ctx = f.context();
    const CoefficientRing& D = ctx->ring();
    if (D.family() != Family::finite_field && !(D.dim() == 1 && D.modulus().exponent() == 1))
        throw std::invalid_argument("Weierstrass preparation needs a finite field");
    if (!ctx->twist().delta_is_zero()) throw std::invalid_argument("Weierstrass preparation needs delta = 0");
    SkewSeries fl = f.in_form(Form::left);
    if (!fl.in_power_series()) throw std::invalid_argument("f must be a power series");
    if (fl.is_zero()) throw ZeroElementError("f vanishes at working precision");
    const int N = fl.bound() ? *fl.bound() : fl.coefficients().rbegin()->first + 1;
    WeierstrassFactorisation out{SkewSeries(ctx, f.level()), 0, SkewSeries(ctx, f.level())};
    out.n = fl.coefficients().begin()->first;
    std::map<int, Element> shifted;
    for (const auto& [e, c] : fl.coefficients()) shifted.emplace(e - out.n, c);
    std::optional<int> ubound;
    if (fl.bound()) ubound = N - out.n;
    out.unit = SkewSeries::from_terms(ctx, f.level(), Form::left, std::move(shifted), ubound);
    out.unit_inverse = invert_unit_series(out.unit, N - out.n);
    return out;
}

namespace {

LinearMap restrict_map(const LinearMap& f, const CoefficientRing& factor, std::size_t off) {
    std::vector<Element> ims;
    for (std::size_t i = 0; i < factor.dim(); ++i) {
        Element img = f.image(off + i);
        for (std::size_t c = 0; c < img.size(); ++c)
            if ((c < off || c >= off + factor.dim()) && img[c] != 0)
                throw std::invalid_argument("twist moves a product factor");
        ims.emplace_back(img.begin() + static_cast<long>(off), img.begin() + static_cast<long>(off + factor.dim()));
    }
    return LinearMap(factor.modulus(), std::move(ims), factor.dim());
}

}  // namespace

std::vector<ContextPtr> split_product(const ContextPtr& ctx) {
    const CoefficientRing& R = ctx->ring();
    if (R.family() != Family::product) throw std::invalid_argument("not a product ring");
    std::vector<ContextPtr> out;
    for (std::size_t i = 0; i < R.components().size(); ++i) {
        const auto& f = R.components()[i];
        const std::size_t off = R.component_offset(i);
        out.push_back(make_context(f, restrict_map(ctx->twist().sigma, *f, off), restrict_map(ctx->twist().delta, *f, off)));
    }
    return out;
}

SkewSeries project_to_factor(const SkewSeries& a, std::size_t i, const ContextPtr& factor) {
    const CoefficientRing& R = a.ring();
    const std::size_t off = R.component_offset(i);
    const std::size_t d = factor->ring().dim();
    SkewSeries al = a.in_form(Form::left);
    std::map<int, Element> terms;
    for (const auto& [e, c] : al.coefficients())
        terms.emplace(e, Element(c.begin() + static_cast<long>(off), c.begin() + static_cast<long>(off + d)));
    return SkewSeries::from_terms(factor, factor->top_level(), Form::left, std::move(terms), al.bound());
}

SkewSeries join_factors(const ContextPtr& ctx, const std::vector<SkewSeries>& parts) {
    const CoefficientRing& R = ctx->ring();
    std::map<int, Element> terms;
    std::optional<int> bound;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        SkewSeries p = parts[i].in_form(Form::left);
        if (p.bound()) bound = bound ? std::min(*bound, *p.bound()) : *p.bound();
        const std::size_t off = R.component_offset(i);
        for (const auto& [e, c] : p.coefficients()) {
            auto it = terms.try_emplace(e, R.zero()).first;
            for (std::size_t k = 0; k < c.size(); ++k) it->second[off + k] = c[k];
        }
    }
    return SkewSeries::from_terms(ctx, ctx->top_level(), Form::left, std::move(terms), bound);
}

}  // namespace skew
