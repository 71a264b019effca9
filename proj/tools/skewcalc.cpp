// skewcalc: command-line front end to the skew Laurent series library.

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <sstream>

#include "skew/norms.hpp"
#include "skew/ore.hpp"
#include "skew/spec_file.hpp"
#include "skew/suites.hpp"

using namespace skew;

namespace {

const char* yes_no(bool b) { return b ? "true" : "false"; }

int level_or_top(const ContextPtr& ctx, int level) { return level < 0 ? ctx->top_level() : level; }

SkewSeries parse_elem(const ContextPtr& ctx, int level, const std::string& text) {
    return SkewSeries::parse(ctx, level_or_top(ctx, level), text);
}

int cmd_ring(const std::string& ring) {
    RingSpec spec = resolve_ring(ring);
    const ContextPtr& ctx = spec.context;
    const CoefficientRing& R = ctx->ring();
    const TwistData& tw = ctx->twist();
    std::cout << "name=" << spec.name << "\n";
    std::cout << "family=" << family_name(R.family()) << "\n";
    std::cout << "description=" << R.description() << "\n";
    std::cout << "modulus=" << R.modulus().q() << "\n";
    std::cout << "basis=";
    for (std::size_t i = 0; i < R.dim(); ++i) std::cout << (i ? "," : "") << R.basis_names()[i];
    std::cout << "\n";
    if (auto c = R.cardinality()) std::cout << "cardinality=" << *c << "\n";
    std::cout << "jac_nilpotency=" << R.jac_nilpotency() << "\n";
    std::cout << "sigma_order=" << tw.sigma_order << "\n";
    std::cout << "delta_zero=" << yes_no(tw.delta_is_zero()) << "\n";
    std::cout << "delta_nilpotency_M=" << tw.nilpotency_M << "\n";
    std::cout << "word_nilpotency_K=" << tw.word_nilpotency_K << "\n";
    std::cout << "continuity_s=" << tw.continuity_s << "\n";
    std::cout << "filtration=" << ctx->filtration().kind << "\n";
    std::cout << "filtration_levels=" << ctx->top_level() << "\n";
    AssumptionReport a = check_assumptions(tw, ctx->filtration());
    std::cout << "stable=" << yes_no(a.stable) << "\n";
    std::cout << "separated=" << yes_no(a.separated) << "\n";
    std::cout << "assumption_I=" << yes_no(a.assumption_I) << "\n";
    std::cout << "assumption_SI0=" << yes_no(a.assumption_SI0) << "\n";
    std::cout << "assumption_SI=" << yes_no(a.assumption_SI) << "\n";
    if (!a.failure.empty()) std::cout << "assumption_failure=" << a.failure << "\n";
    if (spec.group) std::cout << spec.group->report();
    return a.stable ? 0 : 1;
}

int cmd_series(const std::string& ring, const std::string& op, const std::string& a, const std::string& b,
               int level) {
    ContextPtr ctx = resolve_ring(ring).context;
    SkewSeries x = parse_elem(ctx, level, a);
    if (op == "right") {
        SkewSeries r = x.in_form(Form::right);
        std::cout << format_terms(ctx->ring(), TermList{r.coefficients(), r.bound()}) << "\n";
        return 0;
    }
    if (op == "order") {
        OrderLeading ol = order_leading(x);
        std::cout << "order=" << ol.order << "\nleading=" << format_coefficient(ctx->ring(), ol.leading) << "\n";
        return 0;
    }
    if (b.empty()) throw CLI::ValidationError("--b", "required for " + op);
    SkewSeries y = parse_elem(ctx, level, b);
    SkewSeries z = op == "mul" ? x * y : op == "add" ? x + y : x - y;
    std::cout << z.to_string() << "\n";
    return 0;
}

/// The truncated inverse of an exact s read as an exact element, if that is already a two-sided inverse.
std::optional<SkewSeries> exact_inverse(const SkewSeries& s, const SkewSeries& inv) {
    if (!s.is_exact()) return std::nullopt;
    SkewSeries e = inv.exact();
    SkewSeries one = SkewSeries::one(s.context(), s.level());
    if (s * e == one && e * s == one) return e;
    return std::nullopt;
}

void print_witness(const char* side, const std::optional<RegularityWitness>& w) {
    if (!w) return;
    std::cout << side << "_n=" << w->n << "\n" << side << "_search_bound=" << w->search_bound << "\n";
    std::cout << side << "_witness=" << w->g.to_string() << "\n";
}

const char* membership_name(Membership m) {
    switch (m) {
        case Membership::member: return "member";
        case Membership::not_member: return "not_member";
        case Membership::not_found: return "not_found";
    }
    return "?";
}

int cmd_ore(const std::string& sub, const std::string& ring, const std::string& elem, const std::string& num,
            const std::string& den, const std::string& side, int level, int N, int cap) {
    ContextPtr ctx = resolve_ring(ring).context;
    auto ore = std::make_shared<const OreLocalisation>(ctx, cap);
    const int lv = level_or_top(ctx, level);
    if (sub == "test") {
        RegularityResult r = ore->regularity_test(parse_elem(ctx, lv, elem));
        std::cout << "status=" << membership_name(r.status) << "\n";
        print_witness("left", r.left);
        print_witness("right", r.right);
        if (!r.message.empty()) std::cout << "message=" << r.message << "\n";
        return r.member() ? 0 : 1;
    }
    if (sub == "invert") {
        SkewSeries s = parse_elem(ctx, lv, elem);
        SkewSeries inv = ore->invert(s, lv, N);
        if (auto e = exact_inverse(s, inv)) inv = *e;
        std::cout << inv.to_string() << "\n";
        return 0;
    }
    FractionSide fs = side == "left" ? FractionSide::left_denominator : FractionSide::right_denominator;
    LocalisedElement q(ore, parse_elem(ctx, lv, num), parse_elem(ctx, lv, den), fs);
    std::cout << q.expand(lv, N).to_string() << "\n";
    return 0;
}

RingNorm norm_for(const TwistData& tw, const Rational& rho, int power) {
    if (power == 1) return jac_norm(tw, rho);
    return build_norm(tw, NormKind::ideal_adic, tw.ring->jac_power(power), rho);
}

int cmd_norm(const std::string& sub, const std::string& ring, const std::string& elem, const std::string& u,
             const std::string& rho, int power, const std::string& rho2, int power2) {
    RingSpec spec = resolve_ring(ring);
    const TwistData& tw = spec.context->twist();
    RingNorm n = norm_for(tw, parse_rational(rho), power);
    if (sub == "eval") {
        SkewSeries x = parse_elem(spec.context, -1, elem);
        std::cout << format_rational(laurent_norm(n, x, parse_rational(u))) << "\n";
        return 0;
    }
    if (sub == "check") {
        AxiomReport rep = check_axioms(n, *spec.context);
        std::cout << "rho=" << format_rational(n.rho()) << "\nD=" << format_rational(n.D()) << "\n";
        std::cout << "ideal_nilpotency=" << n.nilpotency() << "\n";
        static const char* names[] = {"ultrametric", "definite", "submultiplicative", "unit",
                                      "bounded",     "sigma_invariant", "delta_contractive"};
        for (int i = 0; i < 7; ++i) std::cout << "axiom_" << names[i] << "=" << yes_no(rep.axioms[i]) << "\n";
        std::cout << "monomial_bound=" << yes_no(rep.monomial_bound) << "\n";
        std::cout << "exhaustive=" << yes_no(rep.exhaustive) << "\n";
        if (!rep.failure.empty()) std::cout << "failure=" << rep.failure << "\n";
        const bool ok = rep.ok() && rep.monomial_bound;
        std::cout << "status=" << (ok ? "pass" : "fail") << "\n";
        return ok ? 0 : 1;
    }
    RingNorm m = norm_for(tw, parse_rational(rho2), power2);
    EquivalenceBounds eb = equivalence_bounds(n, m, *tw.ring);
    std::cout << "n1=" << eb.n1 << "\nn2=" << eb.n2 << "\n";
    std::cout << "exponent=" << eb.exponent_num << "/" << eb.exponent_den << "\n";
    std::cout << "elements_checked=" << eb.elements_checked << "\nexhaustive=" << yes_no(eb.exhaustive) << "\n";
    std::cout << "status=" << (eb.holds ? "pass" : "fail") << "\n";
    return eb.holds ? 0 : 1;
}

int cmd_iwasawa(const std::string& ring, std::size_t h, int s, int level) {
    RingSpec spec = resolve_ring(ring);
    if (!spec.group) throw std::invalid_argument("'" + ring + "' has no [group] section");
    const GroupDatum& gd = *spec.group;
    std::cout << gd.report();
    PowerfulReport pr = powerful_checks(gd);
    std::cout << pr.report();
    GeneratorDemo d = alternate_generator_demo(gd, h, s, level_or_top(gd.context, level));
    std::cout << d.report();
    const bool ok = gd.delta_in_jac && d.left_verified && d.right_verified;
    std::cout << "status=" << (ok ? "pass" : "fail") << "\n";
    return ok ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int samples) {
    std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
    bool ok = true;
    for (const auto& n : names) {
        SuiteResult r = run_suite(n, seed, samples);
        std::cout << r.summary() << "\n";
        ok = ok && r.passed();
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic in skew power series rings, their Laurent rings and Ore localisations"};
    app.require_subcommand(1);

    std::string ring = "z4-dual-twisted";
    int level = -1;

    auto* ring_cmd = app.add_subcommand("ring", "Describe a coefficient ring, its twist and filtration");
    ring_cmd->add_option("--ring", ring, "Catalog name or ring file");

    auto* series_cmd = app.add_subcommand("series", "Arithmetic on truncated Laurent elements");
    std::string op = "mul", a, b;
    series_cmd->add_option("op", op, "mul, add, sub, right or order")
        ->check(CLI::IsMember({"mul", "add", "sub", "right", "order"}));
    series_cmd->add_option("--ring", ring, "Catalog name or ring file");
    series_cmd->add_option("--a", a, "First element")->required();
    series_cmd->add_option("--b", b, "Second element");
    series_cmd->add_option("--level", level, "Filtration level (default: top)");

    auto* ore_cmd = app.add_subcommand("ore", "Ore set membership, inversion and fraction expansion");
    std::string ore_sub, elem, num, den, side = "right";
    int N = 8, cap = OreLocalisation::default_cap;
    ore_cmd->add_option("action", ore_sub, "test, invert or expand")
        ->required()
        ->check(CLI::IsMember({"test", "invert", "expand"}));
    ore_cmd->add_option("--ring", ring, "Catalog name or ring file");
    ore_cmd->add_option("--elem", elem, "Element to test or invert");
    ore_cmd->add_option("--num", num, "Numerator of the fraction");
    ore_cmd->add_option("--den", den, "Denominator of the fraction");
    ore_cmd->add_option("--side", side, "right for a*s^-1, left for s^-1*a")->check(CLI::IsMember({"left", "right"}));
    ore_cmd->add_option("--level", level, "Filtration level (default: top)");
    ore_cmd->add_option("--N", N, "Known precision of the result")->check(CLI::PositiveNumber);
    ore_cmd->add_option("--cap", cap, "Cap on the regularity search precision")->check(CLI::PositiveNumber);

    auto* norm_cmd = app.add_subcommand("norm", "Ring norms and overconvergent Laurent norms");
    std::string norm_sub, u = "3/4", rho = "1/2", rho2 = "1/4";
    int power = 1, power2 = 2;
    norm_cmd->add_option("action", norm_sub, "check, eval or compare")
        ->required()
        ->check(CLI::IsMember({"check", "eval", "compare"}));
    norm_cmd->add_option("--ring", ring, "Catalog name or ring file");
    norm_cmd->add_option("--elem", elem, "Element to evaluate");
    norm_cmd->add_option("--u", u, "Radius u with D < u < 1");
    norm_cmd->add_option("--rho", rho, "Base of the first norm");
    norm_cmd->add_option("--power", power, "The first norm is Jac^power-adic")->check(CLI::PositiveNumber);
    norm_cmd->add_option("--rho2", rho2, "Base of the second norm (compare)");
    norm_cmd->add_option("--power2", power2, "The second norm is Jac^power2-adic")->check(CLI::PositiveNumber);

    auto* iw_cmd = app.add_subcommand("iwasawa", "Finite-level Iwasawa algebra checks and the alternate generator");
    std::size_t h = 0;
    int s = 1;
    iw_cmd->add_option("--ring", ring, "Ring file with a [group] section")->required();
    iw_cmd->add_option("--element", h, "Index of h in the enumerated group (0 is the identity)");
    iw_cmd->add_option("--s", s, "Exponent s in hγ^s")->check(CLI::PositiveNumber);
    iw_cmd->add_option("--level", level, "Filtration level (default: top)");

    auto* verify_cmd = app.add_subcommand("verify", "Run a property suite");
    std::string suite;
    std::uint64_t seed = 1;
    int samples = 100;
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    verify_cmd->add_option("suite", suite, "Suite name or all")->required()->check(CLI::IsMember(choices));
    verify_cmd->add_option("--seed", seed, "Random seed");
    verify_cmd->add_option("--samples", samples, "Samples per ring")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ring_cmd) return cmd_ring(ring);
        if (*series_cmd) return cmd_series(ring, op, a, b, level);
        if (*ore_cmd) {
            if (ore_sub == "expand" ? (num.empty() || den.empty()) : elem.empty())
                throw CLI::ValidationError(ore_sub == "expand" ? "--num/--den" : "--elem", "required");
            return cmd_ore(ore_sub, ring, elem, num, den, side, level, N, cap);
        }
        if (*norm_cmd) {
            if (norm_sub == "eval" && elem.empty()) throw CLI::ValidationError("--elem", "required");
            return cmd_norm(norm_sub, ring, elem, u, rho, power, rho2, power2);
        }
        if (*iw_cmd) return cmd_iwasawa(ring, h, s, level);
        if (*verify_cmd) return cmd_verify(suite, seed, samples);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
