#include "skew/norms.hpp"

#include <random>
#include <sstream>

namespace skew {

std::string format_rational(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto slash = s.find('/');
    try {
        using boost::multiprecision::cpp_int;
        if (slash == std::string::npos) return Rational(cpp_int(s));
        cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in rational '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational '" + text + "'");
    }
}

namespace {

Rational rpow(const Rational& base, int e) {
    Rational out = 1;
    Rational b = e < 0 ? Rational(1) / base : base;
    for (int i = 0; i < std::abs(e); ++i) out *= b;
    return out;
}

std::string witness(const CoefficientRing& R, const Element& a) { return "a = " + format_coefficient(R, a); }

std::uint64_t index_of(const CoefficientRing& R, const Element& e) {
    const auto q = static_cast<std::uint64_t>(R.modulus().q());
    std::uint64_t idx = 0;
    for (std::size_t i = R.dim(); i-- > 0;) idx = idx * q + static_cast<std::uint64_t>(e[i]);
    return idx;
}

constexpr std::uint64_t single_limit = 4096;
constexpr std::uint64_t pair_limit = 256;

}  // namespace

const Submodule& RingNorm::ideal_power(int m) const {
    if (m < 0) throw std::out_of_range("negative ideal power");
    return m < static_cast<int>(powers_.size()) ? powers_[static_cast<std::size_t>(m)] : powers_.back();
}

std::optional<int> RingNorm::level(const Element& a) const {
    int m = 0;
    while (m + 1 < static_cast<int>(powers_.size()) && powers_[static_cast<std::size_t>(m + 1)].contains(a)) ++m;
    if (m + 1 == static_cast<int>(powers_.size())) return std::nullopt;
    return m;
}

Rational RingNorm::value(const Element& a) const {
    auto m = level(a);
    return m ? rpow(rho_, *m) : Rational(0);
}

namespace {

AxiomReport scan_axioms(const RingNorm& norm, const TwistData& tw) {
    const CoefficientRing& R = *tw.ring;
    AxiomReport rep;
    auto card = R.cardinality();
    const bool singles = card && *card <= single_limit;
    const bool pairs = card && *card <= pair_limit;
    rep.exhaustive = singles && pairs;
    auto fail = [&](int axiom, const std::string& why) {
        rep.axioms[static_cast<std::size_t>(axiom)] = false;
        if (rep.failure.empty()) rep.failure = "axiom (" + std::to_string(axiom + 1) + ") fails: " + why;
    };
    std::fill(rep.axioms.begin(), rep.axioms.end(), true);

    if (norm.value(R.one()) != 1) fail(3, "|1| = " + format_rational(norm.value(R.one())));

    if (singles) {
        std::vector<Rational> values(static_cast<std::size_t>(*card));
        for (std::uint64_t i = 0; i < *card; ++i) {
            Element a = R.element_at(i);
            const Rational v = norm.value(a);
            values[i] = v;
            const bool zero = i == 0;
            if ((v == 0) != zero) fail(1, witness(R, a));
            if (v > 1) fail(4, witness(R, a));
            if (norm.value(tw.sigma.apply(a)) != v) fail(5, witness(R, a));
            if (norm.value(tw.delta.apply(a)) > norm.D() * v) fail(6, witness(R, a));
        }
        if (pairs) {
            for (std::uint64_t i = 0; i < *card; ++i) {
                Element a = R.element_at(i);
                for (std::uint64_t j = 0; j < *card; ++j) {
                    Element b = R.element_at(j);
                    const Rational m = std::max(values[i], values[j]);
                    if (values[index_of(R, R.sub(a, b))] > m)
                        fail(0, witness(R, a) + ", b = " + format_coefficient(R, b));
                    if (values[index_of(R, R.mul(a, b))] > values[i] * values[j])
                        fail(2, witness(R, a) + ", b = " + format_coefficient(R, b));
                }
            }
        }
    }
    if (!pairs) {
        // For an ideal-adic value both laws reduce to J^a·J^b ⊆ J^{a+b}, the ultrametric law
        // being automatic for submodules.
        const int L = norm.nilpotency();
        for (int a = 1; a < L; ++a)
            for (int b = 1; a + b < L; ++b)
                if (!norm.ideal_power(a + b).contains(R.ideal_product(norm.ideal_power(a), norm.ideal_power(b))))
                    fail(2, "J^" + std::to_string(a) + "·J^" + std::to_string(b) + " leaves J^" + std::to_string(a + b));
    }
    if (!singles) {
        for (int m = 1; m <= norm.nilpotency(); ++m)
            if (!(tw.sigma.apply(norm.ideal_power(m)) == norm.ideal_power(m)))
                fail(5, "sigma moves J^" + std::to_string(m));
    }
    return rep;
}

/// max over m of ρ^{l_m − m}, where l_m is the level of δ(J^m).
Rational ideal_contraction(const RingNorm& norm, const LinearMap& delta) {
    Rational D = 0;
    for (int m = 0; m < norm.nilpotency(); ++m) {
        Submodule img = delta.apply(norm.ideal_power(m));
        if (img.is_zero()) continue;
        int l = 0;
        while (l + 1 < norm.nilpotency() && norm.ideal_power(l + 1).contains(img)) ++l;
        D = std::max(D, rpow(norm.rho(), l - m));
    }
    return D;
}

}  // namespace

bool AxiomReport::ok() const {
    for (bool a : axioms)
        if (!a) return false;
    return true;
}

RingNorm build_norm(const TwistData& tw, NormKind kind, const Submodule& J, const Rational& rho) {
    if (rho <= 0 || rho >= 1) throw std::invalid_argument("rho must lie strictly between 0 and 1");
    const CoefficientRing& R = *tw.ring;
    if (J.dim() != R.dim() || !R.is_ideal(J)) throw std::invalid_argument("J is not a two-sided ideal of R");
    RingNorm n;
    n.kind_ = kind;
    n.rho_ = rho;
    n.powers_.push_back(R.whole());
    const int limit = static_cast<int>(R.dim()) * R.modulus().exponent() + 1;
    while (!n.powers_.back().is_zero()) {
        if (static_cast<int>(n.powers_.size()) > limit)
            throw std::invalid_argument("J-adic filtration does not reach 0");
        n.powers_.push_back(R.ideal_power(J, static_cast<int>(n.powers_.size())));
    }
    if (n.powers_.size() < 2) throw std::invalid_argument("the zero ring carries no norm");

    auto card = R.cardinality();
    if (tw.delta_is_zero()) {
        n.D_ = 0;
        n.exhaustive_ = true;
    } else if (card && *card <= single_limit) {
        for (std::uint64_t i = 1; i < *card; ++i) {
            Element a = R.element_at(i);
            n.D_ = std::max(n.D_, n.value(tw.delta.apply(a)) / n.value(a));
        }
        n.exhaustive_ = true;
    } else {
        n.D_ = ideal_contraction(n, tw.delta);
    }
    if (n.D_ >= 1) throw std::invalid_argument("delta is not contractive (D = " + format_rational(n.D_) + ")");
    AxiomReport rep = scan_axioms(n, tw);
    if (!rep.ok()) throw std::invalid_argument(rep.failure);
    return n;
}

RingNorm jac_norm(const TwistData& tw, const Rational& rho) {
    return build_norm(tw, NormKind::jac_adic, tw.ring->jacobson(), rho);
}

AxiomReport check_axioms(const RingNorm& norm, const TwistData& tw) { return scan_axioms(norm, tw); }

AxiomReport check_axioms(const RingNorm& norm, const SkewContext& ctx) {
    AxiomReport rep = scan_axioms(norm, ctx.twist());
    const CoefficientRing& R = ctx.ring();
    std::vector<Element> probes;
    auto card = R.cardinality();
    if (card && *card <= pair_limit) {
        for (std::uint64_t i = 1; i < *card; ++i) probes.push_back(R.element_at(i));
    } else {
        for (std::size_t b = 0; b < R.dim(); ++b) probes.push_back(R.basis(b));
    }
    rep.monomial_bound = true;
    for (int k = 0; k <= 6; ++k)
        for (int l = 0; k + l <= 6; ++l) {
            const LinearMap& M = ctx.monomial(OperatorKind::delta_sigma, k, l);
            const Rational Dk = rpow(norm.D(), k);
            for (const auto& a : probes)
                if (norm.value(M.apply(a)) > Dk * norm.value(a)) {
                    rep.monomial_bound = false;
                    if (rep.failure.empty())
                        rep.failure = "|M_{" + std::to_string(k) + "," + std::to_string(l) + "}(a)| > D^k|a| at " +
                                      witness(R, a);
                }
        }
    return rep;
}

Rational laurent_norm(const RingNorm& norm, const SkewSeries& x, const Rational& u) {
    if (u <= norm.D() || u >= 1)
        throw std::invalid_argument("u must satisfy D < u < 1 (D = " + format_rational(norm.D()) + ")");
    Rational best = 0;
    const SkewSeries xl = x.in_form(Form::left);
    for (const auto& [e, c] : xl.coefficients()) best = std::max(best, norm.value(c) * rpow(u, e));
    return best;
}

std::string ball_membership(const RingNorm& norm, const SkewSeries& x, const Rational& u) {
    laurent_norm(norm, x, u);
    return "finitely supported: member";
}

SubmultiplicativityReport check_submultiplicative(const RingNorm& norm, const std::vector<SkewSeries>& samples,
                                                  const Rational& u) {
    SubmultiplicativityReport rep;
    std::vector<Rational> v;
    v.reserve(samples.size());
    for (const auto& s : samples) v.push_back(laurent_norm(norm, s, u));
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = 0; j < samples.size(); ++j) {
            ++rep.pairs;
            if (laurent_norm(norm, samples[i] * samples[j], u) > v[i] * v[j]) ++rep.product_failures;
            if (laurent_norm(norm, samples[i] + samples[j], u) > std::max(v[i], v[j])) ++rep.sum_failures;
        }
    return rep;
}

EquivalenceBounds equivalence_bounds(const RingNorm& n1, const RingNorm& n2, const CoefficientRing& R) {
    if (n1.ideal().dim() != R.dim() || n2.ideal().dim() != R.dim())
        throw std::invalid_argument("norms live on different rings");
    EquivalenceBounds out;
    bool found = false;
    for (int den = 1; den <= 64 && !found; ++den)
        for (int num = 1; num <= 64 && !found; ++num)
            if (rpow(n2.rho(), den) == rpow(n1.rho(), num)) {
                out.exponent_num = num;
                out.exponent_den = den;
                found = true;
            }
    if (!found) throw std::invalid_argument("log rho2 / log rho1 is not a ratio of integers up to 64");

    auto entry = [](const RingNorm& a, const RingNorm& b) {
        for (int n = 1; n <= a.nilpotency(); ++n)
            if (b.ideal().contains(a.ideal_power(n))) return n;
        throw std::invalid_argument("no power of one ideal enters the other");
    };
    out.n1 = entry(n1, n2);
    out.n2 = entry(n2, n1);

    // With |a|_1 = ρ₁^{e₁} and |a|_2 = ρ₁^{σ·e₂}, both bounds compare ρ₁-exponents and σ > 0
    // cancels: n₂(1 + e₁) ≥ e₂ and n₁(e₂ + 1) ≥ e₁.
    auto check = [&](const Element& a) {
        ++out.elements_checked;
        auto e1 = n1.level(a);
        auto e2 = n2.level(a);
        if (!e1 || !e2) return e1.has_value() == e2.has_value();
        return out.n2 * (1 + *e1) >= *e2 && out.n1 * (*e2 + 1) >= *e1;
    };
    out.holds = true;
    auto card = R.cardinality();
    if (card && *card <= single_limit) {
        out.exhaustive = true;
        for (std::uint64_t i = 0; i < *card; ++i)
            if (!check(R.element_at(i))) out.holds = false;
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<Int> d(0, R.modulus().q() - 1);
        for (int i = 0; i < 4096; ++i) {
            Element a(R.dim());
            for (auto& x : a) x = d(rng);
            if (!check(a)) out.holds = false;
        }
    }
    return out;
}

}  // namespace skew
