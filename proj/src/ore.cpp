#include "skew/ore.hpp"

#include <algorithm>

namespace skew {

OreLocalisation::OreLocalisation(ContextPtr ctx, int cap)
    : ctx_(std::move(ctx)), residue_(residue_context(ctx_)), cap_(cap) {
    if (cap_ < 2) throw std::invalid_argument("precision cap must be at least 2");
}

std::optional<RegularityWitness> OreLocalisation::solve(const SkewSeries& fbar, bool left, int N) const {
    const ContextPtr& bctx = residue_.context;
    const CoefficientRing& Rb = bctx->ring();
    const std::size_t d = Rb.dim();
    const int level = fbar.level();
    const Int p = Rb.modulus().p();
    const std::size_t width = static_cast<std::size_t>(N) * d;
    TrackedEchelon ech(p, width);
    for (int j = 0; j < N; ++j)
        for (std::size_t b = 0; b < d; ++b) {
            SkewSeries m = SkewSeries::monomial(bctx, level, Rb.basis(b), j);
            SkewSeries prod = (left ? m * fbar : fbar * m).truncated(N);
            if (prod.bound() && *prod.bound() < N) return std::nullopt;
            std::vector<Int> row(width, 0);
            for (const auto& [e, c] : prod.coefficients()) {
                if (e < 0) return std::nullopt;
                for (std::size_t k = 0; k < d; ++k) row[static_cast<std::size_t>(e) * d + k] = c[k];
            }
            ech.insert(row);
        }
    for (int n = 0; n <= N / 2; ++n) {
        std::vector<Int> target(width, 0);
        for (std::size_t k = 0; k < d; ++k) target[static_cast<std::size_t>(n) * d + k] = Rb.one()[k];
        auto combo = ech.express(target);
        if (!combo) continue;
        std::map<int, Element> terms;
        for (int j = 0; j < N; ++j) {
            Element c(d, 0);
            for (std::size_t b = 0; b < d; ++b) c[b] = (*combo)[static_cast<std::size_t>(j) * d + b];
            terms.emplace(j, std::move(c));
        }
        SkewSeries g = SkewSeries::from_terms(bctx, level, Form::left, std::move(terms));
        SkewSeries check = (left ? g * fbar : fbar * g).truncated(N);
        if (!(check == SkewSeries::t_power(bctx, level, n).truncated(N)))
            throw std::logic_error("regularity witness failed its own check");
        return RegularityWitness{g, n, N};
    }
    return std::nullopt;
}

RegularityResult OreLocalisation::regularity_test(const SkewSeries& f, int n0) const {
    if (f.context() != ctx_) throw std::invalid_argument("element belongs to a different ring");
    SkewSeries fl = f.in_form(Form::left);
    if (!fl.in_power_series()) throw std::invalid_argument("regularity test needs an element of A");
    if (fl.is_zero() && fl.is_exact()) throw ZeroElementError("regularity test of the zero element");
    RegularityResult out;
    SkewSeries fbar = residue_.reduce(fl);
    if (fbar.is_zero()) {
        if (fbar.is_exact()) {
            out.status = Membership::not_member;
            out.message = "reduction modulo Jac is zero";
        } else {
            out.message = "reduction modulo Jac vanishes at known precision";
        }
        return out;
    }
    int N = std::max(2, n0);
    while (true) {
        int limit = std::min(N, cap_);
        if (fbar.bound()) limit = std::min(limit, *fbar.bound());
        if (!out.left) out.left = solve(fbar, true, limit);
        if (!out.right) out.right = solve(fbar, false, limit);
        if (out.left && out.right) {
            out.status = Membership::member;
            return out;
        }
        if (limit >= cap_ || (fbar.bound() && limit >= *fbar.bound())) break;
        N *= 2;
    }
    out.message = "not in S at tested precision";
    return out;
}

std::optional<SkewSeries> OreLocalisation::attempt_inverse(const SkewSeries& s, const RegularityWitness& w, int level,
                                                           int N, int work) const {
    const ContextPtr& bctx = residue_.context;
    const int blevel = bctx->top_level();
    SkewSeries sbar = residue_.reduce(s);
    // g·s̄ = v·t^n with v ≡ 1 modulo t^{search_bound − n}, so s̄⁻¹ = t^{−n}·v⁻¹·g.
    SkewSeries v = (w.g * sbar) * SkewSeries::t_power(bctx, blevel, -w.n);
    SkewSeries vinv = invert_unit_series(v, work);
    SkewSeries sbar_inv = SkewSeries::t_power(bctx, blevel, -w.n) * (vinv * w.g);

    SkewSeries sl = s.in_form(Form::left).projected(level);
    SkewSeries approx = residue_.lift(sbar_inv, ctx_, level);
    SkewSeries one = SkewSeries::one(ctx_, level);
    SkewSeries defect = one - approx * sl;
    const Submodule& jac = ctx_->ring().jacobson();
    for (const auto& [e, c] : defect.coefficients())
        if (!jac.contains(c)) throw std::logic_error("lifted inverse is not a unit modulo Jac");
    // The defect has coefficients in Jac, so its powers vanish once they reach Jac^L = 0.
    SkewSeries sum = one, power = one;
    for (int i = 1; i < ctx_->ring().jac_nilpotency(); ++i) {
        power = power * defect;
        sum = sum + power;
    }
    SkewSeries inv = sum * approx;
    if (!inv.bound() || *inv.bound() >= N) return inv.truncated(N);
    return std::nullopt;
}

SkewSeries OreLocalisation::invert(const SkewSeries& s, const RegularityWitness& left, int level, int N) const {
    if (s.context() != ctx_) throw std::invalid_argument("element belongs to a different ring");
    if (level > s.level()) throw std::invalid_argument("cannot invert above the element's level");
    const int step = std::max(8, N - (s.lowest() ? *s.lowest() : 0) + ctx_->word_nilpotency());
    int work = std::max(N, 1) + step;
    const int limit = 64 * (std::abs(N) + step) + cap_;
    for (; work <= limit; work *= 2)
        if (auto inv = attempt_inverse(s, left, level, N, work)) return *inv;
    throw InsufficientPrecisionError("inverse not representable below t^" + std::to_string(N) + " from the given input",
                                     work);
}

SkewSeries OreLocalisation::invert(const SkewSeries& s, int level, int N) const {
    RegularityResult r = regularity_test(s);
    if (!r.member()) throw std::domain_error("element is not certified in S: " + r.message);
    return invert(s, *r.left, level, N);
}

LocalisedElement::LocalisedElement(std::shared_ptr<const OreLocalisation> ore, SkewSeries numerator,
                                   SkewSeries denominator, FractionSide side)
    : ore_(std::move(ore)), a_(std::move(numerator)), s_(std::move(denominator)), side_(side) {
    if (!a_.in_power_series() || !s_.in_power_series()) throw std::invalid_argument("fractions are formed over A");
    witness_ = ore_->regularity_test(s_);
    if (!witness_.member()) throw std::domain_error("denominator is not certified in S: " + witness_.message);
}

SkewSeries LocalisedElement::expand(int level, int N) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find({level, N});
        if (it != cache_.end()) return it->second;
    }
    const int K = ore_->context()->word_nilpotency();
    SkewSeries a = a_.in_form(Form::left).projected(level);
    SkewSeries sinv = ore_->invert(s_, *witness_.left, level, N + K);
    SkewSeries r = (side_ == FractionSide::right_denominator ? a * sinv : sinv * a).truncated(N);
    if (r.bound() && *r.bound() < N) throw InsufficientPrecisionError("numerator precision too low", N);
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(std::make_pair(level, N), r).first->second;
}

SkewSeries LocalisedElement::expand_via_right_form(int level, int N) const {
    const int K = ore_->context()->word_nilpotency();
    SkewSeries a = a_.in_form(Form::right).projected(level);
    SkewSeries sinv = ore_->invert(s_, *witness_.left, level, N + 2 * K).in_form(Form::right);
    SkewSeries r = side_ == FractionSide::right_denominator ? a * sinv : sinv * a;
    return r.in_form(Form::left);
}

namespace {

std::string describe(const SkewSeries& a) { return a.to_string(); }

}  // namespace

ClosureReport s_closure_checks(const OreLocalisation& ore, const std::vector<SkewSeries>& members,
                               const std::vector<SkewSeries>& others, int N) {
    ClosureReport rep;
    const ContextPtr& ctx = ore.context();
    const int top = ctx->top_level();
    const int K = ctx->word_nilpotency();
    std::vector<SkewSeries> all = members;
    all.insert(all.end(), others.begin(), others.end());
    auto fail = [&](int& counter, const std::string& what) {
        ++counter;
        rep.failures.push_back(what);
    };

    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j) {
            ++rep.products_checked;
            if (!ore.regularity_test(members[i] * members[j]).member())
                fail(rep.products_failed, "product not certified: (" + describe(members[i]) + ")*(" + describe(members[j]) + ")");
        }

    for (const auto& a : all)
        for (const auto& s : all) {
            SkewSeries as = a * s;
            if (as.is_zero()) continue;
            if (!ore.regularity_test(as).member()) continue;
            ++rep.saturation_checked;
            if (!ore.regularity_test(s).member())
                fail(rep.saturation_failed, "a*s certified but s is not: s = " + describe(s));
        }

    for (const auto& s : members)
        for (const auto& b : all) {
            ++rep.ore_checked;
            RegularityResult rs = ore.regularity_test(s);
            SkewSeries sinv = ore.invert(s, *rs.left, top, N + 2 * K);
            SkewSeries q = b * sinv;
            int d = 0;
            if (!q.coefficients().empty()) d = std::max(0, -q.coefficients().begin()->first);
            const int M = d + K - 1;
            SkewSeries tM = SkewSeries::t_power(ctx, top, M);
            SkewSeries bprime = (tM * q).truncated(N);
            bool ok = bprime.in_power_series() && (tM * b).truncated(N).agrees_with(bprime * s);
            if (!ok) fail(rep.ore_failed, "Ore condition failed for s = " + describe(s) + ", b = " + describe(b));
        }

    std::vector<ContextPtr> factors;
    if (ctx->ring().family() == Family::product) {
        try {
            factors = split_product(ctx);
        } catch (const std::invalid_argument&) {
            factors.clear();
        }
    }
    if (!factors.empty()) {
        std::vector<OreLocalisation> fore;
        for (const auto& f : factors) fore.emplace_back(f, ore.cap());
        for (const auto& f : all) {
            ++rep.factor_checked;
            bool whole = ore.regularity_test(f).member();
            bool parts = true;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                SkewSeries fi = project_to_factor(f, i, factors[i]);
                if (fi.is_zero() && fi.is_exact()) {
                    parts = false;
                    continue;
                }
                parts = parts && fore[i].regularity_test(fi).member();
            }
            if (whole != parts) fail(rep.factor_failed, "factorwise membership differs for " + describe(f));
        }
    }
    return rep;
}

}  // namespace skew
