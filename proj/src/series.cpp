#include "skew/series.hpp"

#include <algorithm>
#include <climits>

namespace skew {

SkewContext::SkewContext(TwistData twist, Filtration filt)
    : twist_(std::move(twist)), filt_(std::move(filt)), zero_(LinearMap::zero(twist_.ring->modulus(), twist_.ring->dim())) {
    sigma_powers_.push_back(LinearMap::identity(twist_.ring->modulus(), twist_.ring->dim()));
    for (int a = 1; a < twist_.sigma_order; ++a) sigma_powers_.push_back(twist_.sigma.after(sigma_powers_.back()));
}

std::shared_ptr<const SkewContext> SkewContext::create(TwistData twist, Filtration filt) {
    AssumptionReport rep = check_assumptions(twist, filt);
    if (!rep.stable) throw std::invalid_argument("filtration unusable: " + rep.failure);
    return std::shared_ptr<const SkewContext>(new SkewContext(std::move(twist), std::move(filt)));
}

ContextPtr make_context(const RingPtr& R, const LinearMap& sigma, const LinearMap& delta) {
    return SkewContext::create(build_twist(R, sigma, delta), jac_adic_filtration(*R));
}

ContextPtr make_commutative_context(const RingPtr& R) {
    return make_context(R, LinearMap::identity(R->modulus(), R->dim()), LinearMap::zero(R->modulus(), R->dim()));
}

const LinearMap& SkewContext::sigma_power(int e) const {
    const int ord = twist_.sigma_order;
    int r = ((e % ord) + ord) % ord;
    return sigma_powers_[static_cast<std::size_t>(r)];
}

const LinearMap& SkewContext::monomial(OperatorKind kind, int k, int l) const {
    if (k < 0 || l < 0) throw std::invalid_argument("monomial operator indices must be non-negative");
    if (k >= twist_.word_nilpotency_K) return zero_;
    if (k == 0) return sigma_power(kind == OperatorKind::delta_sigma ? l : -l);
    std::lock_guard<std::mutex> lock(mutex_);
    return monomial_locked(kind, k, l);
}

const LinearMap& SkewContext::monomial_locked(OperatorKind kind, int k, int l) const {
    const int tag = kind == OperatorKind::delta_sigma ? 0 : 1;
    auto it = monomials_.find({tag, k, l});
    if (it != monomials_.end()) return it->second;
    const LinearMap& Y = kind == OperatorKind::delta_sigma ? twist_.delta : twist_.delta_prime;
    const LinearMap& Z = kind == OperatorKind::delta_sigma ? twist_.sigma : twist_.sigma_prime;
    // Fill the table row by row so each recurrence step finds its predecessors.
    for (int kk = 1; kk <= k; ++kk)
        for (int ll = 0; ll <= l; ++ll) {
            if (monomials_.count({tag, kk, ll})) continue;
            auto get = [&](int a, int b) -> const LinearMap& {
                if (a == 0) return sigma_power(tag == 0 ? b : -b);
                return monomials_.at({tag, a, b});
            };
            // First letter Y or first letter Z.
            LinearMap m = Y.after(get(kk - 1, ll));
            if (ll > 0) m = m + Z.after(get(kk, ll - 1));
            monomials_.emplace(std::make_tuple(tag, kk, ll), std::move(m));
        }
    return monomials_.at({tag, k, l});
}

int SkewContext::lowest_exponent(int j) const {
    const int K = twist_.word_nilpotency_K;
    return j >= 0 ? std::max(0, j - K + 1) : j - K + 1;
}

const LinearMap& SkewContext::left_commutator(int j, int n) const {
    if (n > j || n < lowest_exponent(j)) return zero_;
    if (j >= 0) return monomial(OperatorKind::delta_sigma, j - n, n);
    if (n == j) return sigma_power(j);
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(0, j, n);
    auto it = commutators_.find(key);
    if (it != commutators_.end()) return it->second;
    const LinearMap& m = monomial_locked(OperatorKind::delta_prime_sigma_prime, j - n, -1 - j);
    return commutators_.emplace(key, twist_.sigma_prime.after(m)).first->second;
}

const LinearMap& SkewContext::right_commutator(int j, int n) const {
    if (n > j || n < lowest_exponent(j)) return zero_;
    if (j >= 0) return monomial(OperatorKind::delta_prime_sigma_prime, j - n, n);
    if (n == j) return sigma_power(-j);
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(1, j, n);
    auto it = commutators_.find(key);
    if (it != commutators_.end()) return it->second;
    const LinearMap& m = monomial_locked(OperatorKind::delta_sigma, j - n, -1 - j);
    return commutators_.emplace(key, twist_.sigma.after(m)).first->second;
}

Element monomial_apply(const SkewContext& ctx, OperatorKind kind, int k, int l, const Element& r) {
    return ctx.monomial(kind, k, l).apply(r);
}

SkewSeries::SkewSeries(ContextPtr ctx, int level, Form form) : ctx_(std::move(ctx)), level_(level), form_(form) {
    if (!ctx_) throw std::invalid_argument("series needs a context");
    if (level_ < 0) throw std::invalid_argument("negative level");
}

SkewSeries SkewSeries::from_terms(ContextPtr ctx, int level, Form form, std::map<int, Element> terms,
                                  std::optional<int> bound) {
    SkewSeries s(std::move(ctx), level, form);
    for (auto& [e, c] : terms)
        if (c.size() != s.ring().dim()) throw std::invalid_argument("coefficient has wrong dimension");
    s.coeffs_ = std::move(terms);
    s.bound_ = bound;
    s.normalise();
    return s;
}

SkewSeries SkewSeries::constant(ContextPtr ctx, int level, const Element& r, Form form) {
    return from_terms(std::move(ctx), level, form, {{0, r}});
}

SkewSeries SkewSeries::monomial(ContextPtr ctx, int level, const Element& r, int exponent, Form form) {
    return from_terms(std::move(ctx), level, form, {{exponent, r}});
}

SkewSeries SkewSeries::t_power(ContextPtr ctx, int level, int exponent, Form form) {
    Element one = ctx->ring().one();
    return from_terms(std::move(ctx), level, form, {{exponent, one}});
}

SkewSeries SkewSeries::one(ContextPtr ctx, int level, Form form) { return t_power(std::move(ctx), level, 0, form); }

SkewSeries SkewSeries::parse(ContextPtr ctx, int level, const std::string& text, Form form) {
    TermList tl = parse_terms(ctx->ring(), text);
    SkewSeries s = from_terms(std::move(ctx), level, Form::left, std::move(tl.terms), tl.bound);
    return s.in_form(form);
}

void SkewSeries::normalise() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (bound_ && it->first >= *bound_) {
            it = coeffs_.erase(it);
            continue;
        }
        it->second = ctx_->reduce(it->second, level_);
        if (skew::is_zero(it->second))
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

Element SkewSeries::coefficient(int i) const {
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? ring().zero() : it->second;
}

std::optional<int> SkewSeries::lowest() const {
    if (!coeffs_.empty()) return coeffs_.begin()->first;
    return bound_;
}

bool SkewSeries::in_power_series() const { return coeffs_.empty() || coeffs_.begin()->first >= 0; }

void SkewSeries::check_compatible(const SkewSeries& o) const {
    if (ctx_ != o.ctx_) throw std::invalid_argument("ring mismatch");
    if (level_ != o.level_) throw std::invalid_argument("level mismatch; project first");
    if (form_ != o.form_) throw std::invalid_argument("form mismatch; convert first");
}

namespace {

std::optional<int> min_bound(std::optional<int> a, std::optional<int> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

}  // namespace

SkewSeries SkewSeries::operator+(const SkewSeries& o) const {
    check_compatible(o);
    SkewSeries r = *this;
    for (const auto& [e, c] : o.coeffs_) {
        auto it = r.coeffs_.find(e);
        if (it == r.coeffs_.end())
            r.coeffs_.emplace(e, c);
        else
            it->second = ring().add(it->second, c);
    }
    r.bound_ = min_bound(bound_, o.bound_);
    r.normalise();
    return r;
}

SkewSeries SkewSeries::operator-() const {
    SkewSeries r = *this;
    for (auto& [e, c] : r.coeffs_) c = ring().neg(c);
    r.normalise();
    return r;
}

SkewSeries SkewSeries::operator-(const SkewSeries& o) const { return *this + (-o); }

SkewSeries SkewSeries::operator*(const SkewSeries& o) const {
    check_compatible(o);
    const SkewContext& ctx = *ctx_;
    const CoefficientRing& R = ring();
    constexpr long inf = LONG_MAX / 4;
    auto low = [&](long j) { return static_cast<long>(ctx.lowest_exponent(static_cast<int>(j))); };
    auto imin_all = [&](const SkewSeries& s) -> long {
        auto l = s.lowest();
        return l ? *l : inf;
    };
    auto imin_known = [&](const SkewSeries& s) -> long { return s.coeffs_.empty() ? inf : s.coeffs_.begin()->first; };
    long n_out = inf;
    if (form_ == Form::left) {
        if (bound_ && imin_all(o) < inf) n_out = std::min(n_out, low(*bound_) + imin_all(o));
        if (o.bound_ && imin_known(*this) < inf) n_out = std::min(n_out, low(imin_known(*this)) + *o.bound_);
    } else {
        if (bound_ && imin_all(o) < inf) n_out = std::min(n_out, *bound_ + low(imin_all(o)));
        if (o.bound_ && imin_known(*this) < inf) n_out = std::min(n_out, imin_known(*this) + low(*o.bound_));
    }
    std::map<int, Element> acc;
    auto accumulate = [&](long e, const Element& c) {
        if (e >= n_out) return;
        auto it = acc.find(static_cast<int>(e));
        if (it == acc.end())
            acc.emplace(static_cast<int>(e), c);
        else
            it->second = R.add(it->second, c);
    };
    for (const auto& [i, a] : coeffs_) {
        for (const auto& [j, b] : o.coeffs_) {
            if (form_ == Form::left) {
                // a t^i · b t^j = Σ_n a·T_{i,n}(b) t^{n+j}
                for (int n = ctx.lowest_exponent(i); n <= i; ++n) {
                    if (static_cast<long>(n) + j >= n_out) break;
                    accumulate(static_cast<long>(n) + j, R.mul(a, ctx.left_commutator(i, n).apply(b)));
                }
            } else {
                // t^i a · t^j b = Σ_n t^{i+n} U_{j,n}(a)·b
                for (int n = ctx.lowest_exponent(j); n <= j; ++n) {
                    if (static_cast<long>(i) + n >= n_out) break;
                    accumulate(static_cast<long>(i) + n, R.mul(ctx.right_commutator(j, n).apply(a), b));
                }
            }
        }
    }
    std::optional<int> bound;
    if (n_out < inf) bound = static_cast<int>(n_out);
    return from_terms(ctx_, level_, form_, std::move(acc), bound);
}

SkewSeries SkewSeries::truncated(int N) const {
    SkewSeries r = *this;
    r.bound_ = min_bound(bound_, N);
    r.normalise();
    return r;
}

SkewSeries SkewSeries::exact() const {
    SkewSeries r = *this;
    r.bound_.reset();
    return r;
}

SkewSeries SkewSeries::in_form(Form f) const {
    if (f == form_) return *this;
    const SkewContext& ctx = *ctx_;
    const CoefficientRing& R = ring();
    std::map<int, Element> acc;
    for (const auto& [i, a] : coeffs_)
        for (int n = ctx.lowest_exponent(i); n <= i; ++n) {
            Element c = form_ == Form::left ? ctx.right_commutator(i, n).apply(a) : ctx.left_commutator(i, n).apply(a);
            auto it = acc.find(n);
            if (it == acc.end())
                acc.emplace(n, c);
            else
                it->second = R.add(it->second, c);
        }
    std::optional<int> bound;
    if (bound_) bound = ctx.lowest_exponent(*bound_);
    return from_terms(ctx_, level_, f, std::move(acc), bound);
}

SkewSeries SkewSeries::projected(int level) const {
    if (level > level_) throw std::invalid_argument("projection must go to a lower level");
    return from_terms(ctx_, level, form_, coeffs_, bound_);
}

SkewSeries SkewSeries::lifted(int level) const {
    if (level < level_) throw std::invalid_argument("lift must go to a higher level");
    return from_terms(ctx_, level, form_, coeffs_, bound_);
}

bool SkewSeries::agrees_with(const SkewSeries& o) const {
    check_compatible(o);
    auto b = min_bound(bound_, o.bound_);
    auto below = [&](int e) { return !b || e < *b; };
    for (const auto& [e, c] : coeffs_)
        if (below(e) && o.coefficient(e) != c) return false;
    for (const auto& [e, c] : o.coeffs_)
        if (below(e) && coefficient(e) != c) return false;
    return true;
}

bool SkewSeries::operator==(const SkewSeries& o) const {
    return ctx_ == o.ctx_ && level_ == o.level_ && form_ == o.form_ && bound_ == o.bound_ && coeffs_ == o.coeffs_;
}

std::string SkewSeries::to_string() const { return format_terms(ring(), in_form(Form::left).terms()); }

SkewSeries commute(const ContextPtr& ctx, int level, int j, const Element& r, CommuteSide side) {
    std::map<int, Element> terms;
    for (int n = ctx->lowest_exponent(j); n <= j; ++n) {
        const LinearMap& op = side == CommuteSide::t_on_left ? ctx->left_commutator(j, n) : ctx->right_commutator(j, n);
        terms.emplace(n, op.apply(r));
    }
    return SkewSeries::from_terms(ctx, level, side == CommuteSide::t_on_left ? Form::left : Form::right, std::move(terms));
}

OreWitness ore_witness(const SkewSeries& a, int j) {
    if (j >= 0) throw std::invalid_argument("ore_witness needs a negative exponent");
    if (!a.in_power_series()) throw std::invalid_argument("ore_witness needs an element of A");
    SkewSeries al = a.in_form(Form::left);
    SkewSeries c = SkewSeries::t_power(a.context(), a.level(), j) * al;
    int N = 0;
    if (!c.is_zero()) N = std::max(0, -c.coefficients().begin()->first);
    SkewSeries ap = c * SkewSeries::t_power(a.context(), a.level(), N);
    return {ap, N};
}

OrderLeading order_leading(const SkewSeries& b) {
    if (b.is_zero()) throw ZeroElementError("order of the zero element");
    SkewSeries l = b.in_form(Form::left);
    if (l.is_zero()) throw ZeroElementError("order of the zero element");
    const auto& [e, c] = *l.coefficients().begin();
    return {e, c};
}

SkewSeries graded_component(const SkewSeries& a, int k) {
    if (k < 0) throw std::invalid_argument("negative graded degree");
    if (a.level() < k + 1) throw std::invalid_argument("element level too low to determine gr_k");
    const Submodule& Ik = a.context()->filtration().level(k);
    for (const auto& [e, c] : a.coefficients())
        if (!Ik.contains(c)) throw std::invalid_argument("element is not in J_" + std::to_string(k));
    return a.projected(k + 1);
}

SkewSeries Tower::at(int level) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(level);
        if (it != cache_.end()) return it->second;
    }
    SkewSeries s = rule_(level);
    if (s.level() != level) throw IncoherentTowerError("tower rule returned the wrong level");
    std::lock_guard<std::mutex> lock(mutex_);
    for (const auto& [k, other] : cache_) {
        bool ok = k < level ? s.projected(k).in_form(other.form()).agrees_with(other)
                            : other.projected(level).in_form(s.form()).agrees_with(s);
        if (!ok)
            throw IncoherentTowerError("tower levels " + std::to_string(k) + " and " + std::to_string(level) +
                                       " disagree under projection");
    }
    return cache_.emplace(level, s).first->second;
}

}  // namespace skew
