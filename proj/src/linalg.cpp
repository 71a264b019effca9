#include "skew/linalg.hpp"

#include <stdexcept>

namespace skew {

Submodule::Submodule(const Modulus& mod, std::size_t dim) : mod_(mod), dim_(dim) {}

Submodule Submodule::span(const Modulus& mod, std::size_t dim, const std::vector<Element>& gens) {
    Submodule s(mod, dim);
    std::vector<Element> work;
    for (const auto& g : gens) {
        if (g.size() != dim) throw std::invalid_argument("generator has wrong dimension");
        Element r(dim);
        for (std::size_t i = 0; i < dim; ++i) r[i] = mod.reduce(g[i]);
        if (!skew::is_zero(r)) work.push_back(std::move(r));
    }
    for (std::size_t c = 0; c < dim && !work.empty(); ++c) {
        std::size_t best = work.size();
        int best_v = mod.exponent();
        for (std::size_t i = 0; i < work.size(); ++i) {
            int v = mod.valuation(work[i][c]);
            if (v < best_v) {
                best_v = v;
                best = i;
            }
        }
        if (best == work.size()) continue;
        Element pivot = std::move(work[best]);
        work.erase(work.begin() + static_cast<long>(best));
        Int pv = mod.power_of_p(best_v);
        Int unit = pivot[c] / pv;
        pivot = scale(mod, mod.inverse(unit), pivot);
        std::vector<Element> next;
        next.reserve(work.size() + 1);
        for (auto& w : work) {
            if (w[c] != 0) axpy(mod, w, -(w[c] / pv), pivot);
            if (!skew::is_zero(w)) next.push_back(std::move(w));
        }
        Element sat = scale(mod, mod.power_of_p(mod.exponent() - best_v), pivot);
        if (!skew::is_zero(sat)) next.push_back(std::move(sat));
        work = std::move(next);
        s.rows_.push_back(std::move(pivot));
        s.pivots_.push_back(c);
        s.pivot_vals_.push_back(best_v);
    }
    for (std::size_t i = 0; i < s.rows_.size(); ++i) {
        Int pv = mod.power_of_p(s.pivot_vals_[i]);
        for (std::size_t j = 0; j < i; ++j) {
            Int k = s.rows_[j][s.pivots_[i]] / pv;
            if (k != 0) axpy(mod, s.rows_[j], -k, s.rows_[i]);
        }
    }
    return s;
}

Submodule Submodule::whole(const Modulus& mod, std::size_t dim) {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < dim; ++i) gens.push_back(unit_vector(dim, i));
    return span(mod, dim, gens);
}

bool Submodule::is_whole() const {
    if (rows_.size() != dim_) return false;
    for (int v : pivot_vals_)
        if (v != 0) return false;
    return true;
}

Element Submodule::reduce(const Element& v) const {
    if (v.size() != dim_) throw std::invalid_argument("vector has wrong dimension");
    Element r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) r[i] = mod_.reduce(v[i]);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Int pv = mod_.power_of_p(pivot_vals_[i]);
        Int k = r[pivots_[i]] / pv;
        if (k != 0) axpy(mod_, r, -k, rows_[i]);
    }
    return r;
}

bool Submodule::contains(const Element& v) const { return skew::is_zero(reduce(v)); }

bool Submodule::contains(const Submodule& other) const {
    for (const auto& r : other.rows_)
        if (!contains(r)) return false;
    return true;
}

Submodule Submodule::operator+(const Submodule& other) const {
    std::vector<Element> gens = rows_;
    gens.insert(gens.end(), other.rows_.begin(), other.rows_.end());
    return span(mod_, dim_, gens);
}

int Submodule::log_size() const {
    int total = 0;
    for (int v : pivot_vals_) total += mod_.exponent() - v;
    return total;
}

LinearMap::LinearMap(const Modulus& mod, std::size_t dim_in, std::size_t dim_out)
    : mod_(mod), dim_out_(dim_out), images_(dim_in, Element(dim_out, 0)) {}

LinearMap::LinearMap(const Modulus& mod, std::vector<Element> images, std::size_t dim_out)
    : mod_(mod), dim_out_(dim_out), images_(std::move(images)) {
    for (auto& im : images_) {
        if (im.size() != dim_out_) throw std::invalid_argument("image has wrong dimension");
        for (auto& x : im) x = mod_.reduce(x);
    }
}

LinearMap LinearMap::identity(const Modulus& mod, std::size_t n) {
    std::vector<Element> ims;
    for (std::size_t i = 0; i < n; ++i) ims.push_back(unit_vector(n, i));
    return LinearMap(mod, std::move(ims), n);
}

Element LinearMap::apply(const Element& v) const {
    if (v.size() != images_.size()) throw std::invalid_argument("vector has wrong dimension");
    Element r(dim_out_, 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) axpy(mod_, r, v[i], images_[i]);
    return r;
}

Submodule LinearMap::apply(const Submodule& s) const {
    std::vector<Element> gens;
    for (const auto& r : s.rows()) gens.push_back(apply(r));
    return Submodule::span(mod_, dim_out_, gens);
}

bool LinearMap::is_zero() const {
    for (const auto& im : images_)
        if (!skew::is_zero(im)) return false;
    return true;
}

LinearMap LinearMap::operator+(const LinearMap& o) const {
    LinearMap r = *this;
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = add(mod_, images_[i], o.images_.at(i));
    return r;
}

LinearMap LinearMap::operator-(const LinearMap& o) const {
    LinearMap r = *this;
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = sub(mod_, images_[i], o.images_.at(i));
    return r;
}

LinearMap LinearMap::operator-() const { return scaled(-1); }

LinearMap LinearMap::scaled(Int c) const {
    LinearMap r = *this;
    for (auto& im : r.images_) im = scale(mod_, c, im);
    return r;
}

LinearMap LinearMap::after(const LinearMap& o) const {
    if (o.dim_out_ != images_.size()) throw std::invalid_argument("composition dimension mismatch");
    std::vector<Element> ims;
    ims.reserve(o.images_.size());
    for (const auto& im : o.images_) ims.push_back(apply(im));
    return LinearMap(mod_, std::move(ims), dim_out_);
}

std::optional<LinearMap> LinearMap::inverse() const {
    std::size_t n = images_.size();
    if (n != dim_out_) return std::nullopt;
    // Rows (f(x) | x); reducing the left half to the identity leaves x = f⁻¹(e_c).
    std::vector<Element> left = images_;
    std::vector<Element> right;
    for (std::size_t i = 0; i < n; ++i) right.push_back(unit_vector(n, i));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r)
            if (mod_.is_unit(left[r][c])) {
                piv = r;
                break;
            }
        if (piv == n) return std::nullopt;
        std::swap(left[c], left[piv]);
        std::swap(right[c], right[piv]);
        Int inv = mod_.inverse(left[c][c]);
        left[c] = scale(mod_, inv, left[c]);
        right[c] = scale(mod_, inv, right[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || left[r][c] == 0) continue;
            Int k = left[r][c];
            axpy(mod_, left[r], -k, left[c]);
            axpy(mod_, right[r], -k, right[c]);
        }
    }
    return LinearMap(mod_, std::move(right), n);
}

namespace {

Int inv_mod_p(Int a, Int p) {
    Int r = 1, b = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

void axpy_p(std::vector<Int>& a, Int c, const std::vector<Int>& b, Int p) {
    if (c == 0) return;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != 0) a[i] = (a[i] + c * b[i]) % p;
}

}  // namespace

TrackedEchelon::TrackedEchelon(Int p, std::size_t dim) : p_(p), dim_(dim), row_at_pivot_(dim, -1) {}

void TrackedEchelon::insert(const std::vector<Int>& v) {
    if (v.size() != dim_) throw std::invalid_argument("vector has wrong dimension");
    std::vector<Int> vec(dim_);
    for (std::size_t i = 0; i < dim_; ++i) vec[i] = ((v[i] % p_) + p_) % p_;
    std::vector<Int> combo(count_ + 1, 0);
    combo[count_] = 1;
    ++count_;
    for (std::size_t c = 0; c < dim_; ++c) {
        if (vec[c] == 0) continue;
        if (row_at_pivot_[c] >= 0) {
            const Row& row = rows_[static_cast<std::size_t>(row_at_pivot_[c])];
            Int k = (p_ - vec[c]) % p_;
            axpy_p(vec, k, row.vec, p_);
            std::vector<Int> rc = row.combo;
            rc.resize(combo.size(), 0);
            axpy_p(combo, k, rc, p_);
            continue;
        }
        Int inv = inv_mod_p(vec[c], p_);
        for (auto& x : vec) x = x * inv % p_;
        for (auto& x : combo) x = x * inv % p_;
        row_at_pivot_[c] = static_cast<long>(rows_.size());
        rows_.push_back(Row{std::move(vec), std::move(combo), c});
        return;
    }
}

std::optional<std::vector<Int>> TrackedEchelon::express(const std::vector<Int>& target) const {
    if (target.size() != dim_) throw std::invalid_argument("vector has wrong dimension");
    std::vector<Int> vec(dim_);
    for (std::size_t i = 0; i < dim_; ++i) vec[i] = ((target[i] % p_) + p_) % p_;
    std::vector<Int> combo(count_, 0);
    for (std::size_t c = 0; c < dim_; ++c) {
        if (vec[c] == 0) continue;
        if (row_at_pivot_[c] < 0) return std::nullopt;
        const Row& row = rows_[static_cast<std::size_t>(row_at_pivot_[c])];
        Int k = vec[c];
        axpy_p(vec, p_ - k, row.vec, p_);
        std::vector<Int> rc = row.combo;
        rc.resize(count_, 0);
        axpy_p(combo, k, rc, p_);
    }
    return combo;
}

std::vector<std::vector<Int>> nullspace_mod_p(Int p, const std::vector<std::vector<Int>>& rows, std::size_t ncols) {
    std::vector<std::vector<Int>> m;
    for (const auto& r : rows) {
        std::vector<Int> rr(ncols);
        for (std::size_t j = 0; j < ncols; ++j) rr[j] = ((r.at(j) % p) + p) % p;
        m.push_back(std::move(rr));
    }
    std::vector<long> pivot_col_row(ncols, -1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < m.size(); ++c) {
        std::size_t piv = m.size();
        for (std::size_t r = rank; r < m.size(); ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        Int inv = inv_mod_p(m[rank][c], p);
        for (auto& x : m[rank]) x = x * inv % p;
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != rank && m[r][c] != 0) axpy_p(m[r], p - m[r][c], m[rank], p);
        pivot_col_row[c] = static_cast<long>(rank);
        ++rank;
    }
    std::vector<std::vector<Int>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (pivot_col_row[f] >= 0) continue;
        std::vector<Int> x(ncols, 0);
        x[f] = 1;
        for (std::size_t c = 0; c < ncols; ++c)
            if (pivot_col_row[c] >= 0) x[c] = (p - m[static_cast<std::size_t>(pivot_col_row[c])][f]) % p;
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace skew
