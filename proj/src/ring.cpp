#include "skew/ring.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <stdexcept>

namespace skew {

std::string family_name(Family f) {
    switch (f) {
        case Family::modular_integers: return "modular_integers";
        case Family::finite_field: return "finite_field";
        case Family::truncated_polynomial: return "truncated_polynomial";
        case Family::matrix_ring: return "matrix_ring";
        case Family::group_algebra: return "group_algebra";
        case Family::product: return "product";
        case Family::custom: return "custom";
    }
    return "custom";
}

RingPtr CoefficientRing::create(Definition def) {
    const std::size_t n = def.names.size();
    if (n == 0) throw std::invalid_argument("ring needs a nonempty basis");
    if (def.table.size() != n * n) throw std::invalid_argument("structure table has wrong size");
    for (auto& row : def.table) {
        if (row.size() != n) throw std::invalid_argument("structure constant has wrong dimension");
        for (auto& x : row) x = def.modulus.reduce(x);
    }
    if (def.one.size() != n) throw std::invalid_argument("unit element has wrong dimension");
    for (auto& x : def.one) x = def.modulus.reduce(x);
    auto ring = std::shared_ptr<CoefficientRing>(new CoefficientRing(std::move(def)));
    const CoefficientRing& R = *ring;

    for (std::size_t i = 0; i < n; ++i) {
        Element e = R.basis(i);
        if (R.mul(R.one(), e) != e || R.mul(e, R.one()) != e)
            throw std::invalid_argument("unit law fails for basis element " + R.def_.names[i]);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Element lhs = R.mul(R.basis_product(i, j), R.basis(k));
                Element rhs = R.mul(R.basis(i), R.basis_product(j, k));
                if (lhs != rhs)
                    throw std::invalid_argument("associativity check failed on (" + R.def_.names[i] + ", " +
                                                R.def_.names[j] + ", " + R.def_.names[k] + ")");
            }
    }

    if (ring->def_.jac_generators)
        ring->jac_gens_ = *ring->def_.jac_generators;
    else
        ring->jac_gens_ = brute_force_jacobson(R);

    Submodule jac = R.ideal(ring->jac_gens_);
    ring->jac_powers_ = {R.whole(), jac};
    const int length = static_cast<int>(n) * R.modulus().exponent();
    while (!ring->jac_powers_.back().is_zero()) {
        if (static_cast<int>(ring->jac_powers_.size()) > length + 1)
            throw std::invalid_argument("radical generators do not generate a nilpotent ideal");
        ring->jac_powers_.push_back(R.ideal_product(ring->jac_powers_.back(), jac));
    }
    if (ring->def_.jac_generators && ring->def_.family == Family::custom && R.cardinality() &&
        *R.cardinality() <= 4096) {
        Submodule brute = R.ideal(brute_force_jacobson(R));
        if (!(brute == jac)) throw std::invalid_argument("supplied radical generators do not span Jac(R)");
    }
    return ring;
}

Element CoefficientRing::mul(const Element& a, const Element& b) const {
    const std::size_t n = dim();
    const Modulus& mod = modulus();
    Element r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            Int c = mod.mul(a[i], b[j]);
            const Element& e = def_.table[i * n + j];
            for (std::size_t k = 0; k < n; ++k)
                if (e[k] != 0) r[k] = mod.reduce(r[k] + c * e[k]);
        }
    }
    return r;
}

Element CoefficientRing::power(const Element& a, std::uint64_t e) const {
    Element r = one();
    Element base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

LinearMap CoefficientRing::left_mult(const Element& a) const {
    std::vector<Element> ims;
    for (std::size_t i = 0; i < dim(); ++i) ims.push_back(mul(a, basis(i)));
    return LinearMap(modulus(), std::move(ims), dim());
}

LinearMap CoefficientRing::right_mult(const Element& a) const {
    std::vector<Element> ims;
    for (std::size_t i = 0; i < dim(); ++i) ims.push_back(mul(basis(i), a));
    return LinearMap(modulus(), std::move(ims), dim());
}

bool CoefficientRing::is_unit(const Element& a) const { return left_mult(a).inverse().has_value(); }

std::optional<Element> CoefficientRing::inverse(const Element& a) const {
    auto inv = left_mult(a).inverse();
    if (!inv) return std::nullopt;
    // In a finite ring a one-sided inverse is two-sided.
    return inv->apply(one());
}

Submodule CoefficientRing::ideal(const std::vector<Element>& gens) const {
    std::vector<Element> span;
    for (const auto& g : gens)
        for (std::size_t i = 0; i < dim(); ++i) {
            Element left = mul(basis(i), g);
            for (std::size_t j = 0; j < dim(); ++j) span.push_back(mul(left, basis(j)));
        }
    for (const auto& g : gens) span.push_back(g);
    return Submodule::span(modulus(), dim(), span);
}

Submodule CoefficientRing::ideal_product(const Submodule& I, const Submodule& J) const {
    std::vector<Element> gens;
    for (const auto& a : I.rows())
        for (const auto& b : J.rows()) gens.push_back(mul(a, b));
    // The span of products of ideal generators is already a two-sided ideal.
    return Submodule::span(modulus(), dim(), gens);
}

Submodule CoefficientRing::ideal_power(const Submodule& I, int k) const {
    Submodule r = whole();
    for (int i = 0; i < k; ++i) r = ideal_product(r, I);
    return r;
}

bool CoefficientRing::is_ideal(const Submodule& I) const {
    for (const auto& a : I.rows())
        for (std::size_t i = 0; i < dim(); ++i)
            if (!I.contains(mul(basis(i), a)) || !I.contains(mul(a, basis(i)))) return false;
    return true;
}

const Submodule& CoefficientRing::jac_power(int k) const {
    if (k < 0) throw std::invalid_argument("negative radical power");
    if (static_cast<std::size_t>(k) >= jac_powers_.size()) return jac_powers_.back();
    return jac_powers_[static_cast<std::size_t>(k)];
}

std::optional<std::uint64_t> CoefficientRing::cardinality() const {
    std::uint64_t c = 1;
    const auto q = static_cast<std::uint64_t>(modulus().q());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (c > (std::uint64_t{1} << 62) / q) return std::nullopt;
        c *= q;
    }
    return c;
}

Element CoefficientRing::element_at(std::uint64_t index) const {
    Element e(dim());
    const auto q = static_cast<std::uint64_t>(modulus().q());
    for (std::size_t i = 0; i < dim(); ++i) {
        e[i] = static_cast<Int>(index % q);
        index /= q;
    }
    return e;
}

std::size_t CoefficientRing::component_offset(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < i; ++k) off += def_.components.at(k)->dim();
    return off;
}

std::vector<Element> brute_force_jacobson(const CoefficientRing& R) {
    auto card = R.cardinality();
    if (!card || *card > 4096) throw std::invalid_argument("brute-force radical needs at most 4096 elements");
    const std::size_t N = static_cast<std::size_t>(*card);
    const auto q = static_cast<std::uint64_t>(R.modulus().q());
    auto index_of = [&](const Element& e) {
        std::uint64_t idx = 0;
        for (std::size_t i = R.dim(); i-- > 0;) idx = idx * q + static_cast<std::uint64_t>(e[i]);
        return static_cast<std::size_t>(idx);
    };
    std::vector<Element> elems;
    std::vector<bool> unit(N);
    for (std::size_t i = 0; i < N; ++i) {
        elems.push_back(R.element_at(i));
        unit[i] = R.is_unit(elems.back());
    }
    std::vector<Element> jac;
    for (std::size_t a = 0; a < N; ++a) {
        if (unit[a]) continue;
        LinearMap ra = R.right_mult(elems[a]);
        bool in = true;
        for (std::size_t b = 0; b < N && in; ++b)
            if (!unit[index_of(R.sub(R.one(), ra.apply(elems[b])))]) in = false;
        if (in) jac.push_back(elems[a]);
    }
    return jac;
}

namespace {

std::vector<std::string> powers_names(const std::string& var, int count) {
    std::vector<std::string> names{"1"};
    for (int i = 1; i < count; ++i) names.push_back(i == 1 ? var : var + std::to_string(i));
    return names;
}

/// Multiplies polynomials over 𝔽_p given by coefficient lists.
std::vector<Int> poly_mul_mod(const std::vector<Int>& a, const std::vector<Int>& b, Int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<Int> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

bool has_root_or_factor(const std::vector<Int>& f, Int p) {
    // Trial division by every monic polynomial of degree 1..deg/2.
    const int d = static_cast<int>(f.size()) - 1;
    for (int k = 1; k <= d / 2; ++k) {
        Int count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (Int code = 0; code < count; ++code) {
            std::vector<Int> g(static_cast<std::size_t>(k + 1), 0);
            Int c = code;
            for (int i = 0; i < k; ++i) {
                g[static_cast<std::size_t>(i)] = c % p;
                c /= p;
            }
            g[static_cast<std::size_t>(k)] = 1;
            std::vector<Int> rem = f;
            for (int i = d; i >= k; --i) {
                Int lead = rem[static_cast<std::size_t>(i)];
                if (lead == 0) continue;
                for (int j = 0; j <= k; ++j) {
                    auto& x = rem[static_cast<std::size_t>(i - k + j)];
                    x = ((x - lead * g[static_cast<std::size_t>(j)]) % p + p) % p;
                }
            }
            bool zero = true;
            for (int i = 0; i < k; ++i)
                if (rem[static_cast<std::size_t>(i)] != 0) zero = false;
            if (zero) return true;
        }
    }
    return false;
}

FieldData make_field_data(Int p, int d) {
    FieldData fd;
    fd.p = p;
    fd.degree = d;
    if (d == 1) return fd;
    Int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (Int code = 0; code < count; ++code) {
        std::vector<Int> f(static_cast<std::size_t>(d + 1), 0);
        Int c = code;
        for (int i = 0; i < d; ++i) {
            f[static_cast<std::size_t>(i)] = c % p;
            c /= p;
        }
        f[static_cast<std::size_t>(d)] = 1;
        if (f[0] == 0 || has_root_or_factor(f, p)) continue;
        for (int i = 0; i < d; ++i) fd.reduction.push_back((p - f[static_cast<std::size_t>(i)]) % p);
        return fd;
    }
    throw std::logic_error("no irreducible polynomial found");
}

/// Product of w^i·w^j in 𝔽_p[w]/(f) as a coefficient vector.
std::vector<Int> field_basis_product(const FieldData& fd, int i, int j) {
    const auto d = static_cast<std::size_t>(fd.degree);
    std::vector<Int> a(d, 0), b(d, 0);
    a[static_cast<std::size_t>(i)] = 1;
    b[static_cast<std::size_t>(j)] = 1;
    std::vector<Int> prod = poly_mul_mod(a, b, fd.p);
    for (std::size_t k = prod.size(); k-- > d;) {
        Int lead = prod[k];
        if (lead == 0) continue;
        prod[k] = 0;
        for (std::size_t t = 0; t < d; ++t) prod[k - d + t] = (prod[k - d + t] + lead * fd.reduction[t]) % fd.p;
    }
    prod.resize(d, 0);
    return prod;
}

}  // namespace

RingPtr modular_integers(Int q) {
    Modulus mod = Modulus::from_prime_power(q);
    CoefficientRing::Definition def;
    def.modulus = mod;
    def.names = {"1"};
    def.table = {Element{1}};
    def.one = Element{1};
    def.family = Family::modular_integers;
    def.description = "Z/" + std::to_string(q);
    def.jac_generators = std::vector<Element>{};
    if (mod.exponent() > 1) def.jac_generators->push_back(Element{mod.p()});
    def.block_idempotents = {def.one};
    return CoefficientRing::create(std::move(def));
}

RingPtr finite_field(Int q) {
    Modulus big = Modulus::from_prime_power(q);
    FieldData fd = make_field_data(big.p(), big.exponent());
    const auto d = static_cast<std::size_t>(fd.degree);
    CoefficientRing::Definition def;
    def.modulus = Modulus(big.p(), 1);
    def.names = powers_names("w", fd.degree);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            def.table.push_back(field_basis_product(fd, static_cast<int>(i), static_cast<int>(j)));
    def.one = unit_vector(d, 0);
    def.family = Family::finite_field;
    def.description = "F_" + std::to_string(q);
    def.jac_generators = std::vector<Element>{};
    def.block_idempotents = {def.one};
    def.field = fd;
    return CoefficientRing::create(std::move(def));
}

RingPtr truncated_polynomial(Int q, int e) {
    if (e < 1) throw std::invalid_argument("truncation degree must be at least 1");
    Modulus mod = Modulus::from_prime_power(q);
    const auto n = static_cast<std::size_t>(e);
    CoefficientRing::Definition def;
    def.modulus = mod;
    def.names = powers_names("x", e);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) def.table.push_back(i + j < n ? unit_vector(n, i + j) : zero_vector(n));
    def.one = unit_vector(n, 0);
    def.family = Family::truncated_polynomial;
    def.description = "Z/" + std::to_string(q) + "[x]/(x^" + std::to_string(e) + ")";
    def.jac_generators = std::vector<Element>{};
    if (mod.exponent() > 1) def.jac_generators->push_back(scale(mod, mod.p(), def.one));
    if (e > 1) def.jac_generators->push_back(unit_vector(n, 1));
    def.block_idempotents = {def.one};
    return CoefficientRing::create(std::move(def));
}

RingPtr matrix_ring(int n, Int q) {
    if (n < 1) throw std::invalid_argument("matrix size must be at least 1");
    Modulus big = Modulus::from_prime_power(q);
    MatrixData md;
    md.n = n;
    md.field = make_field_data(big.p(), big.exponent());
    const int d = md.field.degree;
    const std::size_t dim = static_cast<std::size_t>(n * n * d);
    CoefficientRing::Definition def;
    def.modulus = Modulus(big.p(), 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < d; ++k) {
                std::string name = "e" + std::to_string(i + 1) + std::to_string(j + 1);
                if (k == 1) name += "w";
                if (k > 1) name += "w" + std::to_string(k);
                def.names.push_back(name);
            }
    def.table.assign(dim * dim, zero_vector(dim));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < n; ++l)
                    for (int k2 = 0; k2 < d; ++k2) {
                        // E_ij w^k · E_jl w^k2 = E_il w^(k+k2); other products vanish.
                        auto fp = field_basis_product(md.field, k, k2);
                        Element e = zero_vector(dim);
                        for (int t = 0; t < d; ++t) e[md.index(i, l, t)] = fp[static_cast<std::size_t>(t)];
                        def.table[md.index(i, j, k) * dim + md.index(j, l, k2)] = e;
                    }
    def.one = zero_vector(dim);
    for (int i = 0; i < n; ++i) def.one[md.index(i, i, 0)] = 1;
    def.family = Family::matrix_ring;
    def.description = "M_" + std::to_string(n) + "(F_" + std::to_string(q) + ")";
    def.jac_generators = std::vector<Element>{};
    def.block_idempotents = {def.one};
    def.matrix = md;
    def.field = md.field;
    return CoefficientRing::create(std::move(def));
}

RingPtr group_algebra(Int q, const FiniteGroup& H) {
    Modulus mod = Modulus::from_prime_power(q);
    std::size_t order = H.order();
    std::size_t r = order;
    while (r % static_cast<std::size_t>(mod.p()) == 0) r /= static_cast<std::size_t>(mod.p());
    if (r != 1)
        throw std::invalid_argument("group of order " + std::to_string(order) + " is not a " +
                                    std::to_string(mod.p()) + "-group");
    CoefficientRing::Definition def;
    def.modulus = mod;
    def.names = H.names();
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j) def.table.push_back(unit_vector(order, H.mul(i, j)));
    def.one = unit_vector(order, H.identity());
    def.family = Family::group_algebra;
    def.description = "Z/" + std::to_string(q) + "[H], |H| = " + std::to_string(order);
    def.jac_generators = std::vector<Element>{};
    if (mod.exponent() > 1) def.jac_generators->push_back(scale(mod, mod.p(), def.one));
    for (std::size_t g : H.generators()) {
        Element e = unit_vector(order, g);
        e[H.identity()] = mod.sub(e[H.identity()], 1);
        def.jac_generators->push_back(e);
    }
    def.block_idempotents = {def.one};
    def.group = H;
    return CoefficientRing::create(std::move(def));
}

RingPtr product_ring(const std::vector<RingPtr>& factors) {
    if (factors.size() < 2) throw std::invalid_argument("a product needs at least two factors");
    const Modulus mod = factors[0]->modulus();
    for (const auto& f : factors)
        if (!(f->modulus() == mod)) throw std::invalid_argument("product factors must share the modulus p^m");
    std::size_t dim = 0;
    for (const auto& f : factors) dim += f->dim();
    CoefficientRing::Definition def;
    def.modulus = mod;
    def.table.assign(dim * dim, zero_vector(dim));
    def.one = zero_vector(dim);
    def.family = Family::product;
    def.jac_generators = std::vector<Element>{};
    def.components = factors;
    std::size_t off = 0;
    for (std::size_t c = 0; c < factors.size(); ++c) {
        const auto& f = *factors[c];
        auto embed = [&](const Element& e) {
            Element r = zero_vector(dim);
            for (std::size_t i = 0; i < f.dim(); ++i) r[off + i] = e[i];
            return r;
        };
        for (std::size_t i = 0; i < f.dim(); ++i) {
            const std::string& nm = f.basis_names()[i];
            def.names.push_back(nm == "1" ? "e" + std::to_string(c + 1) : nm + "_" + std::to_string(c + 1));
            for (std::size_t j = 0; j < f.dim(); ++j) def.table[(off + i) * dim + off + j] = embed(f.basis_product(i, j));
        }
        def.one = add(mod, def.one, embed(f.one()));
        for (const auto& g : f.jac_generators()) def.jac_generators->push_back(embed(g));
        for (const auto& b : f.block_idempotents()) def.block_idempotents.push_back(embed(b));
        if (!def.description.empty()) def.description += " x ";
        def.description += f.description();
        off += f.dim();
    }
    return CoefficientRing::create(std::move(def));
}

namespace {

std::string normalise_ring_text(std::string s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        // Superscript digits ² and ³ are UTF-8 sequences C2 B2 and C2 B3.
        if (c == 0xC2 && i + 1 < s.size() && (static_cast<unsigned char>(s[i + 1]) == 0xB2 || static_cast<unsigned char>(s[i + 1]) == 0xB3)) {
            out += static_cast<unsigned char>(s[i + 1]) == 0xB2 ? "^2" : "^3";
            ++i;
            continue;
        }
        if (!std::isspace(c)) out += static_cast<char>(c);
    }
    return out;
}

RingPtr parse_single(const std::string& s) {
    std::smatch m;
    static const std::regex zmod(R"(Z/(\d+))");
    static const std::regex field(R"(F_?(\d+))");
    static const std::regex trunc(R"(Z/(\d+)\[x\]/\(x\^(\d+)\))");
    static const std::regex mat(R"(M_?(\d+)\(F_?(\d+)\))");
    static const std::regex cyc(R"(Z/(\d+)\[C_?(\d+)\])");
    if (std::regex_match(s, m, zmod)) return modular_integers(std::stoll(m[1]));
    if (std::regex_match(s, m, field)) return finite_field(std::stoll(m[1]));
    if (std::regex_match(s, m, trunc)) return truncated_polynomial(std::stoll(m[1]), std::stoi(m[2]));
    if (std::regex_match(s, m, mat)) return matrix_ring(std::stoi(m[1]), std::stoll(m[2]));
    if (std::regex_match(s, m, cyc)) return group_algebra(std::stoll(m[1]), FiniteGroup::cyclic(std::stoi(m[2])));
    throw std::invalid_argument("unrecognised ring: " + s);
}

}  // namespace

RingPtr parse_ring(const std::string& text) {
    std::string s = normalise_ring_text(text);
    std::vector<std::string> parts;
    // Factors are separated by a lowercase x flanked by a closing token and an uppercase letter.
    std::size_t start = 0;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == 'x' && (std::isdigit(static_cast<unsigned char>(s[i - 1])) || s[i - 1] == ')' || s[i - 1] == ']') &&
            std::isupper(static_cast<unsigned char>(s[i + 1]))) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.push_back(s.substr(start));
    if (parts.size() == 1) return parse_single(parts[0]);
    std::vector<RingPtr> factors;
    for (const auto& p : parts) factors.push_back(parse_single(p));
    return product_ring(factors);
}

Element Residue::reduce(const Element& a) const {
    if (identity) return a;
    Element r = jac_mod_p.reduce(a);
    Element out;
    for (std::size_t c : free_columns) out.push_back(r[c]);
    return out;
}

Element Residue::lift(const Element& abar, std::size_t dim) const {
    if (identity) return abar;
    Element r = zero_vector(dim);
    for (std::size_t i = 0; i < free_columns.size(); ++i) r[free_columns[i]] = abar.at(i);
    return r;
}

Residue residue_ring(const RingPtr& R) {
    Residue res;
    if (R->jacobson().is_zero() && R->modulus().exponent() == 1) {
        res.ring = R;
        res.identity = true;
        for (std::size_t i = 0; i < R->dim(); ++i) res.free_columns.push_back(i);
        res.jac_mod_p = Submodule(R->modulus(), R->dim());
        return res;
    }
    const Modulus fp(R->modulus().p(), 1);
    const std::size_t n = R->dim();
    std::vector<Element> gens;
    for (const auto& r : R->jacobson().rows()) gens.push_back(r);
    res.jac_mod_p = Submodule::span(fp, n, gens);
    std::vector<bool> pivot(n, false);
    for (const auto& row : res.jac_mod_p.rows())
        for (std::size_t c = 0; c < n; ++c)
            if (row[c] != 0) {
                pivot[c] = true;
                break;
            }
    for (std::size_t c = 0; c < n; ++c)
        if (!pivot[c]) res.free_columns.push_back(c);
    const std::size_t nb = res.free_columns.size();
    CoefficientRing::Definition def;
    def.modulus = fp;
    for (std::size_t c : res.free_columns) def.names.push_back(R->basis_names()[c]);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            def.table.push_back(res.reduce(R->basis_product(res.free_columns[i], res.free_columns[j])));
    def.one = res.reduce(R->one());
    def.jac_generators = std::vector<Element>{};
    def.family = nb == 1 ? Family::modular_integers : Family::custom;
    def.description = R->description() + " mod Jac";
    for (const auto& b : R->block_idempotents()) def.block_idempotents.push_back(res.reduce(b));
    if (nb == 1 && def.one == Element{1}) def.names = {"1"};
    res.ring = CoefficientRing::create(std::move(def));
    return res;
}

}  // namespace skew
