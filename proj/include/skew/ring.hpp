#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skew/group.hpp"
#include "skew/linalg.hpp"
#include "skew/modular.hpp"

namespace skew {

enum class Family { modular_integers, finite_field, truncated_polynomial, matrix_ring, group_algebra, product, custom };

std::string family_name(Family f);

/// 𝔽_{p^d} = 𝔽_p[w]/(f) with f the lexicographically first monic irreducible of degree d.
struct FieldData {
    Int p = 2;
    int degree = 1;
    /// w^d = Σ reduction[i]·w^i.
    std::vector<Int> reduction;
};

struct MatrixData {
    int n = 1;
    FieldData field;
    /// Basis index of E_ij·w^k.
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>((i * n + j) * field.degree + k);
    }
};

class CoefficientRing;
using RingPtr = std::shared_ptr<const CoefficientRing>;

/// A finite ring, free as a ℤ/p^m-module on a named basis, with multiplication
/// given by structure constants and a distinguished Jacobson radical.
class CoefficientRing {
public:
    struct Definition {
        Modulus modulus;
        std::vector<std::string> names;
        /// table[i*n + j] = e_i·e_j.
        std::vector<Element> table;
        Element one;
        /// std::nullopt requests the brute-force radical (at most 4096 elements).
        std::optional<std::vector<Element>> jac_generators;
        Family family = Family::custom;
        std::string description;
        std::vector<Element> block_idempotents;
        std::optional<FieldData> field;
        std::optional<MatrixData> matrix;
        std::optional<FiniteGroup> group;
        std::vector<RingPtr> components;
    };

    /// Validates associativity, the unit law, and nilpotence of the radical.
    static RingPtr create(Definition def);

    const Modulus& modulus() const { return def_.modulus; }
    std::size_t dim() const { return def_.names.size(); }
    const std::vector<std::string>& basis_names() const { return def_.names; }
    Family family() const { return def_.family; }
    const std::string& description() const { return def_.description; }

    const Element& one() const { return def_.one; }
    Element zero() const { return zero_vector(dim()); }
    Element basis(std::size_t i) const { return unit_vector(dim(), i); }
    Element from_int(Int c) const { return skew::scale(modulus(), c, one()); }
    const Element& basis_product(std::size_t i, std::size_t j) const { return def_.table[i * dim() + j]; }

    Element add(const Element& a, const Element& b) const { return skew::add(modulus(), a, b); }
    Element sub(const Element& a, const Element& b) const { return skew::sub(modulus(), a, b); }
    Element neg(const Element& a) const { return skew::neg(modulus(), a); }
    Element scale(Int c, const Element& a) const { return skew::scale(modulus(), c, a); }
    Element mul(const Element& a, const Element& b) const;
    Element power(const Element& a, std::uint64_t e) const;

    LinearMap left_mult(const Element& a) const;
    LinearMap right_mult(const Element& a) const;
    bool is_unit(const Element& a) const;
    std::optional<Element> inverse(const Element& a) const;

    /// Two-sided ideal generated by gens.
    Submodule ideal(const std::vector<Element>& gens) const;
    /// Ideal generated by all products a·b with a ∈ I, b ∈ J.
    Submodule ideal_product(const Submodule& I, const Submodule& J) const;
    /// Ideal power I^k, with I^0 = R.
    Submodule ideal_power(const Submodule& I, int k) const;
    bool is_ideal(const Submodule& I) const;
    Submodule whole() const { return Submodule::whole(modulus(), dim()); }
    Submodule zero_ideal() const { return Submodule(modulus(), dim()); }

    const std::vector<Element>& jac_generators() const { return jac_gens_; }
    const Submodule& jacobson() const { return jac_powers_.at(1); }
    /// Jac^k, which is zero for k ≥ jac_nilpotency().
    const Submodule& jac_power(int k) const;
    /// Least n with Jac^n = 0.
    int jac_nilpotency() const { return static_cast<int>(jac_powers_.size()) - 1; }

    /// Number of elements if it fits in 62 bits.
    std::optional<std::uint64_t> cardinality() const;
    /// Element with base-q digits of index as coordinates.
    Element element_at(std::uint64_t index) const;

    /// Lifts of the identities of the simple factors of R/Jac; empty if unknown.
    const std::vector<Element>& block_idempotents() const { return def_.block_idempotents; }
    const std::optional<FieldData>& field() const { return def_.field; }
    const std::optional<MatrixData>& matrix() const { return def_.matrix; }
    const std::optional<FiniteGroup>& group() const { return def_.group; }
    const std::vector<RingPtr>& components() const { return def_.components; }
    /// Offset of component i in a product ring.
    std::size_t component_offset(std::size_t i) const;

private:
    explicit CoefficientRing(Definition def) : def_(std::move(def)) {}
    Definition def_;
    std::vector<Element> jac_gens_;
    std::vector<Submodule> jac_powers_;
};

/// Radical as the set of a with 1 − b·a a unit for every b; rings of at most 4096 elements.
std::vector<Element> brute_force_jacobson(const CoefficientRing& R);

RingPtr modular_integers(Int q);
RingPtr finite_field(Int q);
/// (ℤ/q)[x]/(x^e).
RingPtr truncated_polynomial(Int q, int e);
/// M_n(𝔽_q).
RingPtr matrix_ring(int n, Int q);
/// (ℤ/q)[H]; throws unless |H| is a power of the prime dividing q.
RingPtr group_algebra(Int q, const FiniteGroup& H);
RingPtr product_ring(const std::vector<RingPtr>& factors);

/// Parses shorthand such as "Z/4", "F_4", "Z/4[x]/(x^2)", "M_2(F_2)", "Z/4[C4]", "F_2 x F_2".
RingPtr parse_ring(const std::string& text);

/// R/Jac(R) together with the reduction map and an additive section.
struct Residue {
    RingPtr ring;
    /// Coordinates of R used as the basis of the quotient.
    std::vector<std::size_t> free_columns;
    Submodule jac_mod_p;
    bool identity = false;

    Element reduce(const Element& a) const;
    Element lift(const Element& abar, std::size_t dim) const;
};

Residue residue_ring(const RingPtr& R);

}  // namespace skew
