#include "skew/suites.hpp"

#include <functional>
#include <future>
#include <random>
#include <sstream>

#include "skew/catalog.hpp"
#include "skew/iwasawa.hpp"
#include "skew/norms.hpp"
#include "skew/ore.hpp"

namespace skew {

namespace {

struct Shard {
    long checks = 0;
    long failures = 0;
    std::string first;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures++ == 0) first = what;
    }
};

using ShardFn = std::function<Shard(const CatalogEntry&, std::mt19937_64&, int)>;

SkewSeries random_exact(std::mt19937_64& rng, const ContextPtr& ctx, int lo, int hi) {
    const auto& R = ctx->ring();
    std::uniform_int_distribution<Int> d(0, R.modulus().q() - 1);
    std::uniform_int_distribution<int> coin(0, 2);
    std::map<int, Element> terms;
    for (int e = lo; e < hi; ++e) {
        if (coin(rng) == 0) continue;
        Element c(R.dim());
        for (auto& x : c) x = d(rng);
        terms.emplace(e, std::move(c));
    }
    return SkewSeries::from_terms(ctx, ctx->top_level(), Form::left, std::move(terms));
}

Shard associativity(const CatalogEntry& e, std::mt19937_64& rng, int n) {
    Shard s;
    for (int i = 0; i < n; ++i) {
        SkewSeries a = random_exact(rng, e.context, -3, 4), b = random_exact(rng, e.context, -3, 4),
                   c = random_exact(rng, e.context, -3, 4);
        s.expect((a * b) * c == a * (b * c), e.name + ": (ab)c != a(bc) for a = " + a.to_string());
    }
    return s;
}

Shard distributivity(const CatalogEntry& e, std::mt19937_64& rng, int n) {
    Shard s;
    for (int i = 0; i < n; ++i) {
        SkewSeries a = random_exact(rng, e.context, -3, 4), b = random_exact(rng, e.context, -3, 4),
                   c = random_exact(rng, e.context, -3, 4);
        s.expect(a * (b + c) == a * b + a * c, e.name + ": left distributivity");
        s.expect((a + b) * c == a * c + b * c, e.name + ": right distributivity");
    }
    return s;
}

Shard units(const CatalogEntry& e, std::mt19937_64& rng, int n) {
    Shard s;
    SkewSeries one = SkewSeries::one(e.context, e.context->top_level());
    for (int i = 0; i < n; ++i) {
        SkewSeries a = random_exact(rng, e.context, -3, 4);
        s.expect(one * a == a && a * one == a, e.name + ": unit law for " + a.to_string());
    }
    return s;
}

Shard forms(const CatalogEntry& e, std::mt19937_64& rng, int n) {
    Shard s;
    for (int i = 0; i < n; ++i) {
        SkewSeries a = random_exact(rng, e.context, -3, 4), b = random_exact(rng, e.context, -3, 4);
        SkewSeries ar = a.in_form(Form::right), br = b.in_form(Form::right);
        s.expect(ar.in_form(Form::left) == a, e.name + ": form roundtrip");
        s.expect((ar * br).in_form(Form::left) == a * b, e.name + ": right-form product");
    }
    return s;
}

Shard inversion(const CatalogEntry& e, std::mt19937_64& rng, int n) {
    Shard s;
    OreLocalisation ore(e.context);
    const int top = e.context->top_level();
    SkewSeries one = SkewSeries::one(e.context, top);
    for (int i = 0; i < 4 * n && s.checks < 2 * n; ++i) {
        SkewSeries f = random_exact(rng, e.context, 0, 5);
        if (f.is_zero()) continue;
        RegularityResult r = ore.regularity_test(f);
        if (!r.member()) continue;
        SkewSeries inv = ore.invert(f, *r.left, top, 8);
        s.expect((f * inv).agrees_with(one), e.name + ": s*s^-1 != 1 for s = " + f.to_string());
        s.expect((inv * f).agrees_with(one), e.name + ": s^-1*s != 1 for s = " + f.to_string());
    }
    return s;
}

Shard weierstrass_shard(const CatalogEntry& e, std::mt19937_64& rng, int n) {
    Shard s;
    const int top = e.context->top_level();
    for (int i = 0; i < n; ++i) {
        SkewSeries f = random_exact(rng, e.context, 0, 12).truncated(12);
        if (f.is_zero()) continue;
        WeierstrassFactorisation w = weierstrass(f);
        s.expect(w.unit * SkewSeries::t_power(e.context, top, w.n) == f, e.name + ": u*t^n != f for " + f.to_string());
        s.expect(e.context->ring().is_unit(w.unit.coefficient(0)), e.name + ": u is not a unit");
    }
    return s;
}

Shard norm_axioms(const CatalogEntry& e, std::mt19937_64&, int) {
    Shard s;
    RingNorm n = jac_norm(e.context->twist());
    AxiomReport rep = check_axioms(n, *e.context);
    s.expect(rep.ok() && rep.monomial_bound, e.name + ": " + rep.failure);
    return s;
}

Shard submultiplicative(const CatalogEntry& e, std::mt19937_64& rng, int n) {
    Shard s;
    RingNorm norm = jac_norm(e.context->twist());
    for (Rational u : {Rational(9, 16), Rational(5, 8), Rational(3, 4)}) {
        if (u <= norm.D()) continue;
        std::vector<SkewSeries> samples;
        for (int i = 0; i < std::max(2, n / 10); ++i) samples.push_back(random_exact(rng, e.context, -3, 4));
        SubmultiplicativityReport rep = check_submultiplicative(norm, samples, u);
        s.checks += rep.pairs - 1;
        s.expect(rep.ok(), e.name + ": submultiplicativity fails at u = " + format_rational(u));
    }
    return s;
}

std::vector<CatalogEntry> weierstrass_rings() {
    return {{"f2", "F_2", make_commutative_context(finite_field(2))}, {"f4-frobenius", "F_4, Frobenius", frobenius_field(4)}};
}

/// Ring-law rings whose Jacobson norm has D < 1 and on which δ(R) ⊆ Jac.
std::vector<CatalogEntry> normed_rings() {
    std::vector<CatalogEntry> out;
    for (auto& e : localisation_catalog()) {
        const auto& tw = e.context->twist();
        if (!tw.ring->jacobson().contains(tw.delta.apply(tw.ring->whole()))) continue;
        try {
            jac_norm(tw);
        } catch (const std::invalid_argument&) {
            continue;
        }
        out.push_back(e);
    }
    return out;
}

struct SuiteDef {
    std::string name;
    std::function<std::vector<CatalogEntry>()> rings;
    ShardFn shard;
};

const std::vector<SuiteDef>& registry() {
    static const std::vector<SuiteDef> defs{
        {"series-associativity", ring_law_catalog, associativity},
        {"series-distributivity", ring_law_catalog, distributivity},
        {"series-units", ring_law_catalog, units},
        {"series-forms", ring_law_catalog, forms},
        {"ore-inversion", localisation_catalog, inversion},
        {"weierstrass", weierstrass_rings, weierstrass_shard},
        {"norm-axioms", normed_rings, norm_axioms},
        {"norm-submultiplicative", normed_rings, submultiplicative},
    };
    return defs;
}

SuiteResult iwasawa_suite(std::uint64_t seed) {
    SuiteResult r;
    r.name = "iwasawa-demo";
    r.seed = seed;
    r.rings = {"z4-c4-inverting", "z4"};
    auto expect = [&](bool ok, const std::string& what) {
        ++r.checks;
        if (!ok && r.failures++ == 0) r.first_failure = what;
    };
    GroupSpec c4;
    c4.degree = 4;
    c4.generators = {"(1 2 3 4)"};
    c4.gamma = "(2 4)";
    c4.p = 2;
    c4.m = 2;
    GroupDatum gd = build_iwasawa(c4);
    expect(gd.delta_in_jac, "delta(R) is not in Jac");
    expect(gd.assumptions.assumption_SI0, "SI0 fails");
    PowerfulReport pr = powerful_checks(gd);
    expect(pr.ring_conditions(), "ring consequences of powerfulness fail");
    GroupSpec trivial;
    trivial.p = 2;
    trivial.m = 2;
    GroupDatum z4 = build_iwasawa(trivial);
    GeneratorDemo d = alternate_generator_demo(z4, 0, 2, z4.context->top_level());
    expect(d.left_verified && d.right_verified, "t' = 2t + t^2 inverse fails");
    return r;
}

}  // namespace

std::string SuiteResult::summary() const {
    std::ostringstream os;
    os << "suite=" << name << " status=" << (passed() ? "pass" : "fail") << " seed=" << seed << " checks=" << checks
       << " failures=" << failures << " rings=";
    for (std::size_t i = 0; i < rings.size(); ++i) os << (i ? "," : "") << rings[i];
    if (!first_failure.empty()) os << " first_failure=\"" << first_failure << "\"";
    return os.str();
}

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& d : registry()) out.push_back(d.name);
    out.push_back("iwasawa-demo");
    return out;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int samples) {
    if (name == "iwasawa-demo") return iwasawa_suite(seed);
    for (const auto& def : registry()) {
        if (def.name != name) continue;
        SuiteResult r;
        r.name = name;
        r.seed = seed;
        std::vector<CatalogEntry> rings = def.rings();
        std::vector<std::future<Shard>> jobs;
        for (std::size_t i = 0; i < rings.size(); ++i) {
            r.rings.push_back(rings[i].name);
            jobs.push_back(std::async(std::launch::async, [&, i] {
                std::mt19937_64 rng(seed * 1000003u + i);
                return def.shard(rings[i], rng, samples);
            }));
        }
        for (auto& j : jobs) {
            Shard s = j.get();
            r.checks += s.checks;
            r.failures += s.failures;
            if (r.first_failure.empty()) r.first_failure = s.first;
        }
        return r;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace skew
