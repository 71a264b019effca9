#pragma once

#include <map>
#include <string>
#include <vector>

namespace skew {

/// A permutation of {0, …, n−1} stored as its image list.
using Permutation = std::vector<int>;

/// (a·b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);
Permutation identity_permutation(int degree);

/// Parses cycle notation over the points 1..degree, e.g. "(1 2 3)(4 5)" or "()".
Permutation parse_cycles(const std::string& text, int degree);
std::string format_cycles(const Permutation& p);

/// A finite permutation group enumerated from generators, with each element
/// named by a shortest word in the generators.
class FiniteGroup {
public:
    static constexpr std::size_t max_order = std::size_t{1} << 14;

    /// Throws std::invalid_argument if the closure exceeds max_order.
    static FiniteGroup generate(int degree, const std::vector<Permutation>& generators,
                                const std::vector<std::string>& generator_names);
    /// Cyclic group of order n acting on n points.
    static FiniteGroup cyclic(int n, const std::string& name = "h");

    int degree() const { return degree_; }
    std::size_t order() const { return elements_.size(); }
    const Permutation& element(std::size_t i) const { return elements_.at(i); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    /// Index of a permutation, or −1 if it is not in the group.
    long index_of(const Permutation& p) const;
    std::size_t mul(std::size_t a, std::size_t b) const;
    std::size_t inv(std::size_t a) const;
    std::size_t power(std::size_t a, long e) const;
    std::size_t identity() const { return 0; }
    const std::vector<std::size_t>& generators() const { return generators_; }
    const std::vector<std::string>& generator_names() const { return generator_names_; }
    std::size_t element_order(std::size_t a) const;

    /// Membership vector of the subgroup generated by the given elements.
    std::vector<bool> subgroup(const std::vector<std::size_t>& gens) const;

private:
    int degree_ = 0;
    std::vector<Permutation> elements_;
    std::vector<std::string> names_;
    std::map<Permutation, std::size_t> index_;
    std::vector<std::size_t> generators_;
    std::vector<std::string> generator_names_;
};

}  // namespace skew
