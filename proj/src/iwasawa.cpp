#include "skew/iwasawa.hpp"

#include <deque>
#include <sstream>

namespace skew {

namespace {

bool is_power_of(std::uint64_t n, std::uint64_t p) {
    while (n > 1 && n % p == 0) n /= p;
    return n == 1;
}

Int int_power(Int b, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

/// h − 1 in the group algebra.
Element augmentation(const CoefficientRing& R, std::size_t h) {
    Element e = R.basis(h);
    e[0] = R.modulus().sub(e[0], 1);
    return e;
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::vector<std::size_t> extend_generator_images(const FiniteGroup& H, const std::vector<std::size_t>& images) {
    const auto& gens = H.generators();
    if (images.size() != gens.size()) throw std::invalid_argument("need one image per generator");
    const std::size_t none = H.order();
    std::vector<std::size_t> phi(H.order(), none);
    phi[H.identity()] = H.identity();
    std::deque<std::size_t> queue{H.identity()};
    while (!queue.empty()) {
        std::size_t g = queue.front();
        queue.pop_front();
        for (std::size_t k = 0; k < gens.size(); ++k) {
            std::size_t next = H.mul(g, gens[k]);
            std::size_t img = H.mul(phi[g], images[k]);
            if (phi[next] == none) {
                phi[next] = img;
                queue.push_back(next);
            } else if (phi[next] != img) {
                throw std::invalid_argument("generator images do not define a homomorphism");
            }
        }
    }
    return phi;
}

GroupDatum build_iwasawa(const FiniteGroup& H, const std::vector<std::size_t>& action, Int p, int m) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (m < 1) throw std::invalid_argument("m must be positive");
    if (!is_power_of(H.order(), static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("H has order " + std::to_string(H.order()) + ", not a power of " + std::to_string(p));
    if (action.size() != H.order()) throw std::invalid_argument("action must give an image for every element");
    std::vector<bool> hit(H.order(), false);
    for (std::size_t a = 0; a < H.order(); ++a) {
        if (action[a] >= H.order() || hit[action[a]]) throw std::invalid_argument("action is not a bijection");
        hit[action[a]] = true;
        for (std::size_t g : H.generators())
            if (action[H.mul(a, g)] != H.mul(action[a], action[g]))
                throw std::invalid_argument("action is not a homomorphism");
    }
    GroupDatum gd;
    gd.H = H;
    gd.action = action;
    gd.p = p;
    gd.m = m;
    std::vector<std::size_t> cur = action;
    auto is_id = [&](const std::vector<std::size_t>& f) {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] != i) return false;
        return true;
    };
    while (!is_id(cur)) {
        std::vector<std::size_t> next(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) next[i] = action[cur[i]];
        cur = std::move(next);
        ++gd.action_order;
        if (gd.action_order > static_cast<int>(H.order()) * static_cast<int>(H.order()) + 1)
            throw std::logic_error("action order did not close");
    }
    if (!is_power_of(static_cast<std::uint64_t>(gd.action_order), static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("action has order " + std::to_string(gd.action_order) + ", not a power of p");

    gd.ring = group_algebra(int_power(p, m), H);
    const CoefficientRing& R = *gd.ring;
    LinearMap sigma = group_automorphism(R, action);
    gd.context = make_context(gd.ring, sigma, sigma_minus_id(sigma));
    const TwistData& tw = gd.context->twist();
    gd.assumptions = check_assumptions(tw, gd.context->filtration());
    Submodule image = tw.delta.apply(R.whole());
    gd.delta_in_jac = R.jacobson().contains(image);
    gd.delta_in_jac2 = R.jac_power(2).contains(image);
    return gd;
}

GroupDatum build_iwasawa(const GroupSpec& spec) {
    std::vector<Permutation> gens;
    for (const auto& g : spec.generators) gens.push_back(parse_cycles(g, spec.degree));
    std::vector<std::string> names = spec.names;
    if (names.empty()) {
        if (gens.size() == 1) names.push_back("h");
        for (std::size_t i = 0; gens.size() > 1 && i < gens.size(); ++i) names.push_back("h" + std::to_string(i + 1));
    }
    FiniteGroup H = FiniteGroup::generate(spec.degree, gens, names);
    std::vector<std::size_t> action;
    if (spec.gamma) {
        if (!spec.action_images.empty()) throw std::invalid_argument("give either gamma or action images, not both");
        Permutation g = parse_cycles(*spec.gamma, spec.degree);
        Permutation ginv = inverse(g);
        for (std::size_t i = 0; i < H.order(); ++i) {
            long idx = H.index_of(compose(compose(g, H.element(i)), ginv));
            if (idx < 0) throw std::invalid_argument("gamma does not normalise H");
            action.push_back(static_cast<std::size_t>(idx));
        }
    } else if (!spec.action_images.empty()) {
        std::vector<std::size_t> images;
        for (const auto& s : spec.action_images) {
            long idx = H.index_of(parse_cycles(s, spec.degree));
            if (idx < 0) throw std::invalid_argument("action image " + s + " is not in H");
            images.push_back(static_cast<std::size_t>(idx));
        }
        action = extend_generator_images(H, images);
    } else {
        for (std::size_t i = 0; i < H.order(); ++i) action.push_back(i);
    }
    return build_iwasawa(H, action, spec.p, spec.m);
}

std::string GroupDatum::report() const {
    std::ostringstream os;
    os << "group_order=" << H.order() << "\n"
       << "p=" << p << "\n"
       << "m=" << m << "\n"
       << "action_order=" << action_order << "\n"
       << "ring_dim=" << ring->dim() << "\n"
       << "jac_nilpotency=" << ring->jac_nilpotency() << "\n"
       << "delta_in_jac=" << flag(delta_in_jac) << "\n"
       << "delta_in_jac2=" << flag(delta_in_jac2) << "\n"
       << "assumption_I=" << flag(assumptions.assumption_I) << "\n"
       << "assumption_SI0=" << flag(assumptions.assumption_SI0) << "\n"
       << "assumption_SI=" << flag(assumptions.assumption_SI) << "\n";
    return os.str();
}

PowerfulReport powerful_checks(const GroupDatum& gd) {
    PowerfulReport rep;
    const FiniteGroup& H = gd.H;
    const CoefficientRing& R = *gd.ring;
    const TwistData& tw = gd.context->twist();
    rep.epsilon = gd.p == 2 ? 2 : 1;

    auto power_subgroup = [&](long e) {
        std::vector<std::size_t> gens;
        for (std::size_t h = 0; h < H.order(); ++h) gens.push_back(H.power(h, e));
        return H.subgroup(gens);
    };
    const std::vector<bool> Hpe = power_subgroup(static_cast<long>(int_power(gd.p, rep.epsilon)));
    const std::vector<bool> Hp2 = power_subgroup(static_cast<long>(gd.p * gd.p));

    rep.gamma_commutators = true;
    for (std::size_t h = 0; h < H.order(); ++h) {
        std::size_t c = H.mul(gd.action[h], H.inv(h));
        if (!Hpe[c]) {
            rep.gamma_commutators = false;
            rep.notes.push_back("[gamma," + H.name(h) + "] = " + H.name(c) + " is not in H^(p^epsilon)");
            break;
        }
    }

    // [H,H] is the normal closure of the generator commutators.
    std::vector<std::size_t> comms;
    const auto& gens = H.generators();
    for (std::size_t a : gens)
        for (std::size_t b : gens) {
            std::size_t c = H.mul(H.mul(a, b), H.mul(H.inv(a), H.inv(b)));
            for (std::size_t g = 0; g < H.order(); ++g) comms.push_back(H.mul(H.mul(g, c), H.inv(g)));
        }
    std::vector<bool> derived = H.subgroup(comms);
    rep.derived_subgroup = true;
    for (std::size_t h = 0; h < H.order(); ++h)
        if (derived[h] && !Hp2[h]) {
            rep.derived_subgroup = false;
            rep.notes.push_back("commutator " + H.name(h) + " is not in H^(p^2)");
            break;
        }

    const Submodule& jac2 = R.jac_power(2);
    const Submodule& jac3 = R.jac_power(3);
    rep.delta_jac_in_jac2 = jac2.contains(tw.delta.apply(R.jacobson()));
    rep.generator_images_in_jac2 = true;
    for (std::size_t g : gens)
        if (!jac2.contains(tw.delta.apply(augmentation(R, g)))) {
            rep.generator_images_in_jac2 = false;
            rep.notes.push_back("delta(" + H.name(g) + " - 1) is not in Jac^2");
        }
    rep.graded_commutative = true;
    for (std::size_t a : gens)
        for (std::size_t b : gens) {
            Element x = augmentation(R, a), y = augmentation(R, b);
            if (!jac3.contains(R.sub(R.mul(x, y), R.mul(y, x)))) {
                rep.graded_commutative = false;
                rep.notes.push_back("(" + H.name(a) + "-1) and (" + H.name(b) + "-1) do not commute modulo Jac^3");
            }
        }
    if (!rep.group_conditions() && rep.ring_conditions())
        rep.notes.push_back("group hypothesis fails but the ring conclusions hold");
    return rep;
}

std::string PowerfulReport::report() const {
    std::ostringstream os;
    os << "epsilon=" << epsilon << "\n"
       << "gamma_commutators=" << flag(gamma_commutators) << "\n"
       << "derived_subgroup=" << flag(derived_subgroup) << "\n"
       << "delta_jac_in_jac2=" << flag(delta_jac_in_jac2) << "\n"
       << "generator_images_in_jac2=" << flag(generator_images_in_jac2) << "\n"
       << "graded_commutative=" << flag(graded_commutative) << "\n";
    for (const auto& n : notes) os << "note=" << n << "\n";
    return os.str();
}

GeneratorDemo alternate_generator_demo(const GroupDatum& gd, std::size_t h, int s, int level) {
    if (s < 1) throw std::invalid_argument("s must be a positive integer");
    if (h >= gd.H.order()) throw std::invalid_argument("h is not an element of H");
    const ContextPtr& ctx = gd.context;
    const CoefficientRing& R = *gd.ring;
    if (level < 1 || level > ctx->top_level()) throw std::invalid_argument("level out of range");
    if (!R.jacobson().contains(augmentation(R, h))) throw std::invalid_argument("h - 1 is not in Jac");

    SkewSeries one = SkewSeries::one(ctx, level);
    SkewSeries t = SkewSeries::t_power(ctx, level, 1);
    SkewSeries H = SkewSeries::constant(ctx, level, R.basis(h));
    SkewSeries Hinv = SkewSeries::constant(ctx, level, R.basis(gd.H.inv(h)));
    SkewSeries binom = one;
    for (int i = 0; i < s; ++i) binom = binom * (one + t);
    SkewSeries t_prime = H * binom - one;

    SkewSeries tms = SkewSeries::t_power(ctx, level, -s);
    SkewSeries a = SkewSeries::t_power(ctx, level, s) - Hinv * t_prime;
    SkewSeries c = a * tms;
    SkewSeries sum = one, power = one;
    const int cap = R.jac_nilpotency() + 1;
    int nilpotency = 1;
    for (; nilpotency <= cap; ++nilpotency) {
        power = power * c;
        if (power.is_zero()) break;
        sum = sum + power;
    }
    if (!power.is_zero()) throw std::invalid_argument("a*t^-s is not nilpotent at this level");
    SkewSeries inverse = tms * sum * Hinv;
    const bool left = t_prime * inverse == one;
    const bool right = inverse * t_prime == one;
    return GeneratorDemo{level, s, t_prime, a, nilpotency, inverse, left, right};
}

std::string GeneratorDemo::report() const {
    std::ostringstream os;
    os << "level=" << level << "\n"
       << "s=" << s << "\n"
       << "t_prime=" << t_prime.to_string() << "\n"
       << "a=" << a.to_string() << "\n"
       << "nilpotency=" << nilpotency << "\n"
       << "inverse=" << inverse.to_string() << "\n"
       << "left_verified=" << flag(left_verified) << "\n"
       << "right_verified=" << flag(right_verified) << "\n";
    return os.str();
}

}  // namespace skew
