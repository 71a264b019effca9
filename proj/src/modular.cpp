#include "skew/modular.hpp"

#include <stdexcept>
#include <string>

namespace skew {

bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Modulus::Modulus(Int p, int m) : p_(p), m_(m), q_(1) {
    if (!is_prime(p)) throw std::invalid_argument("modulus base " + std::to_string(p) + " is not prime");
    if (m < 1) throw std::invalid_argument("modulus exponent must be at least 1");
    for (int i = 0; i < m; ++i) {
        q_ *= p;
        if (q_ >= (Int{1} << 31)) throw std::invalid_argument("modulus too large");
    }
}

Modulus Modulus::from_prime_power(Int q) {
    if (q < 2) throw std::invalid_argument("invalid prime power " + std::to_string(q));
    Int p = 2;
    while (q % p != 0) ++p;
    int m = 0;
    Int r = q;
    while (r % p == 0) {
        r /= p;
        ++m;
    }
    if (r != 1) throw std::invalid_argument("invalid prime power " + std::to_string(q));
    return Modulus(p, m);
}

int Modulus::valuation(Int a) const {
    a = reduce(a);
    if (a == 0) return m_;
    int v = 0;
    while (a % p_ == 0) {
        a /= p_;
        ++v;
    }
    return v;
}

Int Modulus::power_of_p(int v) const {
    Int r = 1;
    for (int i = 0; i < v; ++i) r *= p_;
    return reduce(r);
}

Int Modulus::inverse(Int a) const {
    a = reduce(a);
    if (!is_unit(a)) throw std::domain_error("element " + std::to_string(a) + " is not a unit");
    // Extended Euclid on (a, q).
    Int r0 = q_, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int k = r0 / r1;
        Int r2 = r0 - k * r1;
        r0 = r1;
        r1 = r2;
        Int s2 = s0 - k * s1;
        s0 = s1;
        s1 = s2;
    }
    return reduce(s0);
}

Element zero_vector(std::size_t n) { return Element(n, 0); }

Element unit_vector(std::size_t n, std::size_t i) {
    Element v(n, 0);
    v.at(i) = 1;
    return v;
}

bool is_zero(const Element& v) {
    for (Int x : v)
        if (x != 0) return false;
    return true;
}

Element add(const Modulus& mod, const Element& a, const Element& b) {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod.add(a[i], b[i]);
    return r;
}

Element sub(const Modulus& mod, const Element& a, const Element& b) {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod.sub(a[i], b[i]);
    return r;
}

Element neg(const Modulus& mod, const Element& a) {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod.neg(a[i]);
    return r;
}

Element scale(const Modulus& mod, Int c, const Element& a) {
    Element r(a.size());
    c = mod.reduce(c);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod.reduce(c * a[i]);
    return r;
}

void axpy(const Modulus& mod, Element& a, Int c, const Element& b) {
    c = mod.reduce(c);
    if (c == 0) return;
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod.reduce(a[i] + c * b[i]);
}

}  // namespace skew
