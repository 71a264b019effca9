#pragma once

#include <optional>
#include <vector>

#include "skew/modular.hpp"

namespace skew {

/// A ℤ/p^m-submodule of (ℤ/p^m)^n stored in Howell normal form.
///
/// Each row has a leading entry p^v in a distinct pivot column, entries above a
/// pivot are reduced into [0, p^v), and every element of the module whose first
/// c coordinates vanish lies in the span of the rows with pivot ≥ c. The form is
/// canonical, so equality of modules is equality of row lists.
class Submodule {
public:
    Submodule() = default;
    Submodule(const Modulus& mod, std::size_t dim);

    static Submodule span(const Modulus& mod, std::size_t dim, const std::vector<Element>& gens);
    static Submodule whole(const Modulus& mod, std::size_t dim);

    const Modulus& modulus() const { return mod_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Element>& rows() const { return rows_; }
    bool is_zero() const { return rows_.empty(); }
    bool is_whole() const;

    /// Canonical representative of v + M.
    Element reduce(const Element& v) const;
    bool contains(const Element& v) const;
    bool contains(const Submodule& other) const;

    Submodule operator+(const Submodule& other) const;
    /// log_p of the number of elements.
    int log_size() const;

    bool operator==(const Submodule& other) const { return dim_ == other.dim_ && rows_ == other.rows_; }

private:
    Modulus mod_;
    std::size_t dim_ = 0;
    std::vector<Element> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<int> pivot_vals_;
};

/// A ℤ/p^m-linear map (ℤ/p^m)^n_in → (ℤ/p^m)^n_out given by the images of basis vectors.
class LinearMap {
public:
    LinearMap() = default;
    LinearMap(const Modulus& mod, std::size_t dim_in, std::size_t dim_out);
    LinearMap(const Modulus& mod, std::vector<Element> images, std::size_t dim_out);

    static LinearMap identity(const Modulus& mod, std::size_t n);
    static LinearMap zero(const Modulus& mod, std::size_t n) { return LinearMap(mod, n, n); }

    std::size_t dim_in() const { return images_.size(); }
    std::size_t dim_out() const { return dim_out_; }
    const Modulus& modulus() const { return mod_; }
    const Element& image(std::size_t i) const { return images_.at(i); }
    const std::vector<Element>& images() const { return images_; }

    Element apply(const Element& v) const;
    /// Image of a submodule.
    Submodule apply(const Submodule& s) const;

    bool is_zero() const;
    LinearMap operator+(const LinearMap& o) const;
    LinearMap operator-(const LinearMap& o) const;
    LinearMap operator-() const;
    LinearMap scaled(Int c) const;
    /// Composition (*this)∘o.
    LinearMap after(const LinearMap& o) const;
    /// Inverse of a square map; std::nullopt if not bijective.
    std::optional<LinearMap> inverse() const;

    bool operator==(const LinearMap& o) const { return dim_out_ == o.dim_out_ && images_ == o.images_; }

private:
    Modulus mod_;
    std::size_t dim_out_ = 0;
    std::vector<Element> images_;
};

/// Incremental row echelon over 𝔽_p that records how each row was formed from
/// the inserted vectors, so targets can be expressed as combinations of them.
class TrackedEchelon {
public:
    TrackedEchelon(Int p, std::size_t dim);

    /// Inserts a vector; its index is the number of previous insertions.
    void insert(const std::vector<Int>& v);
    std::size_t inserted() const { return count_; }
    std::size_t rank() const { return rows_.size(); }
    /// Coefficients c with Σ c_i·v_i = target, or std::nullopt.
    std::optional<std::vector<Int>> express(const std::vector<Int>& target) const;

private:
    struct Row {
        std::vector<Int> vec;
        std::vector<Int> combo;
        std::size_t pivot;
    };
    Int p_;
    std::size_t dim_;
    std::size_t count_ = 0;
    std::vector<Row> rows_;
    std::vector<long> row_at_pivot_;
};

/// Basis of {x : Σ_j rows[i][j]·x_j = 0 for all i} over 𝔽_p.
std::vector<std::vector<Int>> nullspace_mod_p(Int p, const std::vector<std::vector<Int>>& rows, std::size_t ncols);

}  // namespace skew
