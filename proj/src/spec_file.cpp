#include "skew/spec_file.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "skew/catalog.hpp"

namespace skew {

namespace {

struct Entry {
    std::string key;
    std::string value;
    int line;
};

using Sections = std::map<std::string, std::vector<Entry>>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

Sections read_sections(const std::string& text) {
    static const std::set<std::string> known{"ring", "sigma", "delta", "filtration", "group"};
    Sections out;
    std::istringstream is(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw SpecError(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (!known.count(section)) throw SpecError(line, "unknown section [" + section + "]");
            if (out.count(section)) throw SpecError(line, "duplicate section [" + section + "]");
            out[section];
            continue;
        }
        if (section.empty()) throw SpecError(line, "entry outside any section");
        auto eq = s.find('=');
        if (eq == std::string::npos) throw SpecError(line, "expected key = value");
        out[section].push_back({trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line});
    }
    return out;
}

const Entry* find(const std::vector<Entry>& es, const std::string& key) {
    const Entry* hit = nullptr;
    for (const auto& e : es)
        if (e.key == key) {
            if (hit) throw SpecError(e.line, "duplicate key '" + key + "'");
            hit = &e;
        }
    return hit;
}

int to_int(const Entry& e) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw SpecError(e.line, "expected an integer for '" + e.key + "'");
    }
}

/// Rethrows library errors with the line of the entry that caused them.
template <class F>
auto at_line(int line, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SpecError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw SpecError(line, ex.what());
    }
}

RingPtr custom_ring(const std::vector<Entry>& es) {
    const Entry* mod = find(es, "modulus");
    const Entry* basis = find(es, "basis");
    const Entry* one = find(es, "one");
    if (!mod || !basis || !one) throw SpecError(0, "custom ring needs modulus, basis and one");
    CoefficientRing::Definition def;
    def.modulus = at_line(mod->line, [&] { return Modulus::from_prime_power(to_int(*mod)); });
    for (const auto& nm : split(basis->value, ',')) {
        std::istringstream words(nm);
        for (std::string w; words >> w;) def.names.push_back(w);
    }
    const std::size_t n = def.names.size();
    if (n == 0) throw SpecError(basis->line, "empty basis");
    def.table.assign(n * n, zero_vector(n));
    def.family = Family::custom;
    def.description = "custom ring of dimension " + std::to_string(n);

    auto index_of = [&](const std::string& name, int line) {
        for (std::size_t i = 0; i < n; ++i)
            if (def.names[i] == name) return i;
        throw SpecError(line, "unknown basis element '" + name + "'");
    };
    std::vector<bool> given(n * n, false);
    // Integers are multiples of `one`; while reading `one` itself they refer to a basis element named 1.
    Element unit = zero_vector(n);
    for (std::size_t i = 0; i < n; ++i)
        if (def.names[i] == "1") unit = unit_vector(n, i);
    auto parse_elem = [&](const std::string& text, int line) {
        return at_line(line, [&] { return parse_coefficient(def.modulus, def.names, unit, text); });
    };
    def.one = parse_elem(one->value, one->line);
    unit = def.one;
    for (const auto& e : es) {
        auto star = e.key.find('*');
        if (star == std::string::npos) continue;
        std::size_t i = index_of(trim(e.key.substr(0, star)), e.line);
        std::size_t j = index_of(trim(e.key.substr(star + 1)), e.line);
        def.table[i * n + j] = parse_elem(e.value, e.line);
        given[i * n + j] = true;
    }
    // Unlisted products with a basis element equal to the unit follow the unit law; others are zero.
    for (std::size_t k = 0; k < n; ++k) {
        if (def.one != unit_vector(n, k)) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (!given[k * n + j]) def.table[k * n + j] = unit_vector(n, j);
            if (!given[j * n + k]) def.table[j * n + k] = unit_vector(n, j);
        }
    }
    if (const Entry* jac = find(es, "jacobson")) {
        def.jac_generators = std::vector<Element>{};
        for (const auto& g : split(jac->value, ',')) def.jac_generators->push_back(parse_elem(g, jac->line));
    }
    return at_line(basis->line, [&] { return CoefficientRing::create(std::move(def)); });
}

RingPtr build_ring(const std::vector<Entry>& es) {
    for (const auto& e : es) {
        static const std::set<std::string> keys{"shorthand", "modulus", "basis", "one", "jacobson"};
        if (!keys.count(e.key) && e.key.find('*') == std::string::npos)
            throw SpecError(e.line, "unknown key '" + e.key + "' in [ring]");
    }
    if (const Entry* sh = find(es, "shorthand")) {
        if (es.size() != 1) throw SpecError(sh->line, "shorthand excludes other [ring] keys");
        return at_line(sh->line, [&] { return parse_ring(sh->value); });
    }
    return custom_ring(es);
}

/// Images given either as a matrix or as per-basis lines `name = element`.
LinearMap build_map(const CoefficientRing& R, const std::vector<Entry>& es, const std::string& section,
                    const LinearMap& fallback) {
    std::vector<Element> ims = fallback.images();
    for (const auto& e : es) {
        if (e.key == "kind" || e.key == "conjugator") continue;
        if (e.key == "matrix") {
            ims = at_line(e.line, [&] { return parse_matrix(R.modulus(), R.dim(), e.value).images(); });
            continue;
        }
        std::size_t idx = R.dim();
        for (std::size_t i = 0; i < R.dim(); ++i)
            if (R.basis_names()[i] == e.key) idx = i;
        if (idx == R.dim()) throw SpecError(e.line, "unknown key '" + e.key + "' in [" + section + "]");
        ims[idx] = at_line(e.line, [&] { return parse_coefficient(R, e.value); });
    }
    return LinearMap(R.modulus(), std::move(ims), R.dim());
}

LinearMap build_sigma(const CoefficientRing& R, const std::vector<Entry>& es) {
    LinearMap id = LinearMap::identity(R.modulus(), R.dim());
    const Entry* kind = find(es, "kind");
    const std::string k = kind ? kind->value : "images";
    const int line = kind ? kind->line : 0;
    if (k == "identity") return id;
    if (k == "frobenius") return at_line(line, [&] { return frobenius(R); });
    if (k == "inner") {
        const Entry* c = find(es, "conjugator");
        if (!c) throw SpecError(line, "inner sigma needs a conjugator");
        return at_line(c->line, [&] { return inner_automorphism(R, parse_coefficient(R, c->value)); });
    }
    if (k == "images" || k == "matrix") return build_map(R, es, "sigma", id);
    throw SpecError(line, "unknown sigma kind '" + k + "'");
}

LinearMap build_delta(const CoefficientRing& R, const std::vector<Entry>& es, const LinearMap& sigma) {
    LinearMap zero = LinearMap::zero(R.modulus(), R.dim());
    const Entry* kind = find(es, "kind");
    const std::string k = kind ? kind->value : "images";
    if (k == "zero") return zero;
    if (k == "sigma_minus_id") return sigma_minus_id(sigma);
    if (k == "images" || k == "matrix") return build_map(R, es, "delta", zero);
    throw SpecError(kind->line, "unknown delta kind '" + k + "'");
}

Filtration build_filtration(const TwistData& tw, const std::vector<Entry>& es) {
    const CoefficientRing& R = *tw.ring;
    const Entry* kind = find(es, "kind");
    const std::string k = kind ? kind->value : "jacobson";
    if (k == "jacobson") return jac_adic_filtration(R);
    if (k == "standard") {
        const Entry* depth = find(es, "depth");
        return standard_filtration(tw, depth ? to_int(*depth) : 64);
    }
    if (k == "explicit") {
        std::vector<Submodule> levels;
        int line = kind->line;
        for (const auto& e : es) {
            if (e.key != "level") continue;
            std::vector<Element> gens;
            for (const auto& g : split(e.value, ','))
                gens.push_back(at_line(e.line, [&] { return parse_coefficient(R, g); }));
            levels.push_back(R.ideal(gens));
            line = e.line;
        }
        return at_line(line, [&] { return explicit_filtration(R, levels); });
    }
    throw SpecError(kind->line, "unknown filtration kind '" + k + "'");
}

GroupDatum build_group(const std::vector<Entry>& es) {
    GroupSpec g;
    int last = 0;
    for (const auto& e : es) {
        last = e.line;
        if (e.key == "degree") g.degree = to_int(e);
        else if (e.key == "generator") g.generators.push_back(e.value);
        else if (e.key == "names") g.names = split(e.value, ',');
        else if (e.key == "gamma") g.gamma = e.value;
        else if (e.key == "action") g.action_images.push_back(e.value);
        else if (e.key == "p") g.p = to_int(e);
        else if (e.key == "m") g.m = to_int(e);
        else throw SpecError(e.line, "unknown key '" + e.key + "' in [group]");
    }
    return at_line(last, [&] { return build_iwasawa(g); });
}

}  // namespace

LinearMap parse_matrix(const Modulus& mod, std::size_t dim, const std::string& text) {
    std::vector<Element> rows;
    for (const auto& r : split(text, ';')) {
        std::istringstream is(r);
        Element row;
        for (std::string tok; is >> tok;) {
            try {
                row.push_back(mod.reduce(std::stoll(tok)));
            } catch (const std::exception&) {
                throw std::invalid_argument("matrix entry '" + tok + "' is not an integer");
            }
        }
        if (row.size() != dim) throw std::invalid_argument("matrix row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(dim));
        rows.push_back(std::move(row));
    }
    if (rows.size() != dim) throw std::invalid_argument("matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(dim));
    return LinearMap(mod, std::move(rows), dim);
}

RingSpec parse_ring_spec(const std::string& text, const std::string& name) {
    Sections sec = read_sections(text);
    RingSpec out;
    out.name = name;
    const std::vector<Entry> none;
    auto get = [&](const std::string& s) -> const std::vector<Entry>& {
        auto it = sec.find(s);
        return it == sec.end() ? none : it->second;
    };
    if (sec.count("group")) {
        for (const char* other : {"ring", "sigma", "delta"})
            if (sec.count(other)) throw SpecError(0, std::string("[group] determines the ring; remove [") + other + "]");
        out.group = build_group(get("group"));
        if (!sec.count("filtration")) {
            out.context = out.group->context;
            return out;
        }
        const TwistData& tw = out.group->context->twist();
        out.context = at_line(0, [&] { return SkewContext::create(tw, build_filtration(tw, get("filtration"))); });
        return out;
    }
    if (!sec.count("ring")) throw SpecError(0, "missing [ring] section");
    RingPtr R = build_ring(get("ring"));
    LinearMap sigma = build_sigma(*R, get("sigma"));
    LinearMap delta = build_delta(*R, get("delta"), sigma);
    int line = !get("delta").empty() ? get("delta").front().line : !get("sigma").empty() ? get("sigma").front().line : 0;
    TwistData tw = at_line(line, [&] { return build_twist(R, sigma, delta); });
    Filtration filt = build_filtration(tw, get("filtration"));
    out.context = at_line(0, [&] { return SkewContext::create(tw, filt); });
    return out;
}

RingSpec load_ring_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open ring file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_ring_spec(ss.str(), path);
}

RingSpec resolve_ring(const std::string& name_or_path) {
    for (const auto& entry : localisation_catalog())
        if (entry.name == name_or_path) return RingSpec{entry.name, entry.context, std::nullopt};
    if (name_or_path == "m2f2-inner-derivation")
        return RingSpec{name_or_path, inner_matrix_ring_with_derivation(), std::nullopt};
    return load_ring_spec(name_or_path);
}

}  // namespace skew
