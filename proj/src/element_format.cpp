#include "skew/element_format.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace skew {

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// What the parser needs from a ring: coordinates, basis names and the unit.
struct Syntax {
    Modulus mod;
    std::vector<std::string> names;
    Element one;

    Element zero() const { return zero_vector(names.size()); }
    Element basis(std::size_t i) const { return unit_vector(names.size(), i); }
    Element add(const Element& a, const Element& b) const { return skew::add(mod, a, b); }
    Element sub(const Element& a, const Element& b) const { return skew::sub(mod, a, b); }
    Element neg(const Element& a) const { return skew::neg(mod, a); }
    Element scale(Int c, const Element& a) const { return skew::scale(mod, c, a); }
    Element from_int(Int c) const { return scale(c, one); }
    const Modulus& modulus() const { return mod; }
    const std::vector<std::string>& basis_names() const { return names; }
};

class Parser {
public:
    Parser(Syntax R, const std::string& text) : R_(std::move(R)) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
    }

    TermList series() {
        TermList out;
        if (s_.empty()) throw error("empty element");
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                throw error("expected '+' or '-'");
            }
            first = false;
            if (peek_name() == "O") {
                if (sign < 0) throw error("a precision term cannot be negated");
                pos_ += 1;
                expect('(');
                int e = tpow();
                expect(')');
                out.bound = out.bound ? std::min(*out.bound, e) : e;
                continue;
            }
            auto [coeff, exp] = term();
            if (sign < 0) coeff = R_.neg(coeff);
            auto it = out.terms.find(exp);
            if (it == out.terms.end())
                out.terms.emplace(exp, coeff);
            else
                it->second = R_.add(it->second, coeff);
        }
        for (auto it = out.terms.begin(); it != out.terms.end();) {
            if (is_zero(it->second) || (out.bound && it->first >= *out.bound))
                it = out.terms.erase(it);
            else
                ++it;
        }
        return out;
    }

private:
    Syntax R_;
    std::string s_;
    std::size_t pos_ = 0;

    std::invalid_argument error(const std::string& msg) const {
        return std::invalid_argument(msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void expect(char c) {
        if (peek() != c) throw error(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::string peek_name(std::size_t at) const {
        if (at >= s_.size() || !name_start(s_[at])) return {};
        std::size_t e = at;
        while (e < s_.size() && name_char(s_[e])) ++e;
        return s_.substr(at, e - at);
    }
    std::string peek_name() const { return peek_name(pos_); }

    Int integer() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw error("expected integer");
        Int v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) v = R_.modulus().reduce(v * 10 + (s_[pos_++] - '0'));
        return v;
    }

    int signed_exponent() {
        int sign = 1;
        if (peek() == '-' || peek() == '+') {
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw error("expected exponent");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s_[pos_++] - '0');
            if (v > 1000000) throw error("exponent too large");
        }
        return static_cast<int>(sign * v);
    }

    int tpow() {
        if (peek_name() != "t") throw error("expected 't'");
        ++pos_;
        if (peek() != '^') return 1;
        ++pos_;
        return signed_exponent();
    }

    Element basis_named(const std::string& name) {
        const auto& names = R_.basis_names();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return R_.basis(i);
        throw error("unknown basis element '" + name + "'");
    }

    Element coeff_term() {
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Int c = integer();
            std::string nm = peek_name();
            if (!nm.empty() && nm != "t" && nm != "O") {
                pos_ += nm.size();
                return R_.scale(c, basis_named(nm));
            }
            if (peek() == '*') {
                std::string after = peek_name(pos_ + 1);
                if (!after.empty() && after != "t") {
                    pos_ += 1 + after.size();
                    return R_.scale(c, basis_named(after));
                }
            }
            return R_.from_int(c);
        }
        std::string nm = peek_name();
        if (nm.empty() || nm == "t" || nm == "O") throw error("expected coefficient");
        pos_ += nm.size();
        return basis_named(nm);
    }

    Element coeff() {
        if (peek() != '(') return coeff_term();
        ++pos_;
        Element sum = R_.zero();
        bool first = true;
        while (peek() != ')') {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                throw error("expected '+', '-' or ')'");
            }
            first = false;
            Element c = coeff_term();
            sum = sign > 0 ? R_.add(sum, c) : R_.sub(sum, c);
        }
        ++pos_;
        return sum;
    }

    std::pair<Element, int> term() {
        if (peek_name() == "t") return {R_.one, tpow()};
        Element c = coeff();
        if (peek() == '*') {
            ++pos_;
            return {c, tpow()};
        }
        return {c, 0};
    }
};

struct Piece {
    bool negative;
    std::string body;
};

std::vector<Piece> coefficient_pieces(const CoefficientRing& R, const Element& a) {
    std::vector<Piece> out;
    const Int q = R.modulus().q();
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int v = a[i];
        if (v == 0) continue;
        bool negative = q > 2 && 2 * v >= q;
        Int mag = negative ? q - v : v;
        const std::string& nm = R.basis_names()[i];
        std::string body;
        if (nm == "1")
            body = std::to_string(mag);
        else
            body = (mag == 1 ? "" : std::to_string(mag)) + nm;
        out.push_back({negative, body});
    }
    return out;
}

}  // namespace

TermList parse_terms(const CoefficientRing& R, const std::string& text) {
    return Parser(Syntax{R.modulus(), R.basis_names(), R.one()}, text).series();
}

Element parse_coefficient(const CoefficientRing& R, const std::string& text) {
    return parse_coefficient(R.modulus(), R.basis_names(), R.one(), text);
}

Element parse_coefficient(const Modulus& mod, const std::vector<std::string>& names, const Element& one,
                          const std::string& text) {
    TermList tl = Parser(Syntax{mod, names, one}, text).series();
    if (tl.bound) throw std::invalid_argument("a coefficient cannot carry a precision term");
    Element r = zero_vector(names.size());
    for (const auto& [e, c] : tl.terms) {
        if (e != 0) throw std::invalid_argument("a coefficient cannot involve t: " + text);
        r = c;
    }
    return r;
}

std::string format_terms(const CoefficientRing& R, const TermList& tl) {
    std::ostringstream out;
    bool first = true;
    for (auto it = tl.terms.rbegin(); it != tl.terms.rend(); ++it) {
        for (const auto& piece : coefficient_pieces(R, it->second)) {
            if (first)
                out << (piece.negative ? "-" : "");
            else
                out << (piece.negative ? " - " : " + ");
            first = false;
            out << piece.body;
            if (it->first != 0) out << "*t^" << it->first;
        }
    }
    if (tl.bound) {
        if (!first) out << " + ";
        out << "O(t^" << *tl.bound << ")";
        first = false;
    }
    if (first) return "0";
    return out.str();
}

std::string format_coefficient(const CoefficientRing& R, const Element& a) {
    TermList tl;
    if (!is_zero(a)) tl.terms.emplace(0, a);
    return format_terms(R, tl);
}

}  // namespace skew
