#pragma once

#include <map>

#include "skew/series.hpp"

namespace skew::testing {

/// Reference multiplication that only ever moves a single t or t⁻¹ past a
/// coefficient, using t·r = σ(r)t + δ(r) and its consequence
/// t⁻¹·r = σ⁻¹(r)t⁻¹ + t⁻¹·(−δσ⁻¹(r))·t⁻¹. Exact left-form inputs only.
class RewritingOracle {
public:
    explicit RewritingOracle(const TwistData& tw)
        : R_(*tw.ring), sigma_(tw.sigma), delta_(tw.delta), sigma_inv_(*tw.sigma.inverse()),
          delta_dual_(-tw.delta.after(*tw.sigma.inverse())) {}

    using Terms = std::map<int, Element>;

    /// Left normal form of t^e·r.
    Terms move(int e, const Element& r) const {
        Terms out;
        if (is_zero(r)) return out;
        if (e == 0) {
            out.emplace(0, r);
            return out;
        }
        if (e > 0) {
            add_shifted(out, move(e - 1, sigma_.apply(r)), 1);
            add_shifted(out, move(e - 1, delta_.apply(r)), 0);
        } else {
            add_shifted(out, move(e + 1, sigma_inv_.apply(r)), -1);
            // t^{e+1}·t⁻¹·δ′(r)·t⁻¹ = t^e·δ′(r)·t⁻¹
            add_shifted(out, move(e, delta_dual_.apply(r)), -1);
        }
        return out;
    }

    Terms multiply(const Terms& a, const Terms& b) const {
        Terms out;
        for (const auto& [i, ai] : a)
            for (const auto& [j, bj] : b) {
                Terms moved = move(i, bj);
                Terms scaled;
                for (const auto& [n, c] : moved) scaled.emplace(n, R_.mul(ai, c));
                add_shifted(out, scaled, j);
            }
        for (auto it = out.begin(); it != out.end();) it = is_zero(it->second) ? out.erase(it) : std::next(it);
        return out;
    }

private:
    const CoefficientRing& R_;
    LinearMap sigma_, delta_, sigma_inv_, delta_dual_;

    void add_shifted(Terms& out, const Terms& in, int shift) const {
        for (const auto& [e, c] : in) {
            auto it = out.find(e + shift);
            if (it == out.end())
                out.emplace(e + shift, c);
            else
                it->second = R_.add(it->second, c);
        }
    }
};

}  // namespace skew::testing
