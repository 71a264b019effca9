#pragma once

#include <cstdint>
#include <vector>

namespace skew {

using Int = std::int64_t;

/// A coordinate vector over ℤ/p^m.
using Element = std::vector<Int>;

bool is_prime(Int n);

/// Arithmetic in ℤ/p^m for a prime power p^m < 2^31.
class Modulus {
public:
    Modulus() = default;
    Modulus(Int p, int m);

    /// Parses q as p^m; throws std::invalid_argument if q is not a prime power.
    static Modulus from_prime_power(Int q);

    Int p() const { return p_; }
    int exponent() const { return m_; }
    Int q() const { return q_; }

    Int reduce(Int a) const {
        Int r = a % q_;
        return r < 0 ? r + q_ : r;
    }
    Int add(Int a, Int b) const { return reduce(a + b); }
    Int sub(Int a, Int b) const { return reduce(a - b); }
    Int mul(Int a, Int b) const { return reduce(reduce(a) * reduce(b)); }
    Int neg(Int a) const { return reduce(-a); }

    /// p-adic valuation of a mod q, with valuation(0) = m.
    int valuation(Int a) const;
    Int power_of_p(int v) const;
    bool is_unit(Int a) const { return valuation(a) == 0; }
    /// Inverse of a unit; throws std::domain_error otherwise.
    Int inverse(Int a) const;

    bool operator==(const Modulus&) const = default;

private:
    Int p_ = 2;
    int m_ = 1;
    Int q_ = 2;
};

Element zero_vector(std::size_t n);
Element unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Element& v);

Element add(const Modulus& mod, const Element& a, const Element& b);
Element sub(const Modulus& mod, const Element& a, const Element& b);
Element neg(const Modulus& mod, const Element& a);
Element scale(const Modulus& mod, Int c, const Element& a);
/// a += c·b in place.
void axpy(const Modulus& mod, Element& a, Int c, const Element& b);

}  // namespace skew
