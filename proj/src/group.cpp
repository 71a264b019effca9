#include "skew/group.hpp"

#include <cctype>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace skew {

Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
}

Permutation inverse(const Permutation& a) {
    Permutation r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    return r;
}

Permutation identity_permutation(int degree) {
    Permutation r(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) r[static_cast<std::size_t>(i)] = i;
    return r;
}

Permutation parse_cycles(const std::string& text, int degree) {
    Permutation result = identity_permutation(degree);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos == text.size()) throw std::invalid_argument("empty permutation");
    while (pos < text.size()) {
        if (text[pos] != '(') throw std::invalid_argument("expected '(' in permutation: " + text);
        ++pos;
        std::vector<int> cycle;
        for (;;) {
            skip();
            if (pos >= text.size()) throw std::invalid_argument("unterminated cycle: " + text);
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            if (text[pos] == ',') {
                ++pos;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[pos])))
                throw std::invalid_argument("bad character in permutation: " + text);
            int v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) v = v * 10 + (text[pos++] - '0');
            if (v < 1 || v > degree) throw std::invalid_argument("point out of range in permutation: " + text);
            for (int c : cycle)
                if (c == v - 1) throw std::invalid_argument("repeated point in cycle: " + text);
            cycle.push_back(v - 1);
        }
        Permutation c = identity_permutation(degree);
        for (std::size_t i = 0; i < cycle.size(); ++i)
            c[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
        // Cycles compose left to right as written: (1 2)(2 3) applies (2 3) first.
        result = compose(result, c);
        skip();
    }
    return result;
}

std::string format_cycles(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    std::ostringstream out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        out << '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out << ' ';
            out << j + 1;
            first = false;
            j = static_cast<std::size_t>(p[j]);
        }
        out << ')';
    }
    std::string s = out.str();
    return s.empty() ? "()" : s;
}

namespace {

std::string word_name(const std::vector<std::size_t>& word, const std::vector<std::string>& gen_names) {
    if (word.empty()) return "1";
    std::string s;
    std::size_t i = 0;
    while (i < word.size()) {
        std::size_t j = i;
        while (j < word.size() && word[j] == word[i]) ++j;
        s += gen_names[word[i]];
        if (j - i > 1) s += std::to_string(j - i);
        i = j;
    }
    return s;
}

}  // namespace

FiniteGroup FiniteGroup::generate(int degree, const std::vector<Permutation>& generators,
                                  const std::vector<std::string>& generator_names) {
    if (generators.size() != generator_names.size()) throw std::invalid_argument("generator names do not match generators");
    FiniteGroup g;
    g.degree_ = degree;
    g.generator_names_ = generator_names;
    for (const auto& gen : generators)
        if (static_cast<int>(gen.size()) != degree) throw std::invalid_argument("generator has wrong degree");
    std::vector<std::vector<std::size_t>> words;
    Permutation id = identity_permutation(degree);
    g.elements_.push_back(id);
    g.index_[id] = 0;
    words.push_back({});
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t k = 0; k < generators.size(); ++k) {
            // Appending on the right keeps names as h, h2, h3 for powers.
            Permutation next = compose(g.elements_[cur], generators[k]);
            if (g.index_.count(next)) continue;
            if (g.elements_.size() >= max_order) throw std::invalid_argument("group order exceeds 2^14");
            g.index_[next] = g.elements_.size();
            g.elements_.push_back(next);
            auto w = words[cur];
            w.push_back(k);
            words.push_back(std::move(w));
            queue.push_back(g.elements_.size() - 1);
        }
    }
    for (const auto& w : words) g.names_.push_back(word_name(w, generator_names));
    for (const auto& gen : generators) g.generators_.push_back(g.index_.at(gen));
    return g;
}

FiniteGroup FiniteGroup::cyclic(int n, const std::string& name) {
    if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
    if (n == 1) return generate(1, {}, {});
    Permutation c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % n;
    return generate(n, {c}, {name});
}

long FiniteGroup::index_of(const Permutation& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : static_cast<long>(it->second);
}

std::size_t FiniteGroup::mul(std::size_t a, std::size_t b) const {
    return index_.at(compose(elements_.at(a), elements_.at(b)));
}

std::size_t FiniteGroup::inv(std::size_t a) const { return index_.at(inverse(elements_.at(a))); }

std::size_t FiniteGroup::power(std::size_t a, long e) const {
    std::size_t base = e < 0 ? inv(a) : a;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    std::size_t r = identity();
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
    std::size_t n = 1;
    std::size_t x = a;
    while (x != identity()) {
        x = mul(x, a);
        ++n;
    }
    return n;
}

std::vector<bool> FiniteGroup::subgroup(const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(order(), false);
    in[identity()] = true;
    std::deque<std::size_t> queue{identity()};
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t gidx : gens) {
            std::size_t next = mul(cur, gidx);
            if (!in[next]) {
                in[next] = true;
                queue.push_back(next);
            }
        }
    }
    return in;
}

}  // namespace skew
