#ifndef CYDYN_CONFIG_HPP
#define CYDYN_CONFIG_HPP

#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/primitivity.hpp"
#include "cydyn/rat.hpp"
#include "cydyn/translation.hpp"

namespace cydyn {

/* Line-oriented config format.
 *
 * A file is a `schema_version` line followed by bracketed sections of
 * `key value...` lines; '#' starts a comment, blank lines are ignored,
 * tokens are whitespace-separated.  All numbers are exact: integers or
 * a/b rationals, never decimals.  Parsing is strict: unknown sections or
 * keys, malformed numbers, out-of-range indices and duplicate map names
 * are all errors carrying the offending line number.
 *
 *   schema_version 1
 *   [ambient]      dims 2 2 2
 *   [variety]      hypersurface 1 1 1        (one line per hypersurface)
 *   [fibrations]   indices 1 2 3
 *   [maps]         map phi_123 1 2 3         (name, then fiber/quotient indices)
 *   [composition]  order phi_123 phi_231 phi_312
 *   [hypotheses]   minimal_calabi_yau true / dimension 3 /
 *                  picard_number 3 / m_abundant true
 *   [options]      depth 3 / width 1/1000000000
 *   [effective]    witness 1 0 2             (optional extra effective classes)
 *   [reference]    expect_pushforward_of_fixed phi_123 -17 -1 4
 */

struct ConfigError : Error {
    int line;
    ConfigError(int line_no, const std::string& msg)
        : Error("config line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

struct MapDecl {
    std::string name;
    TranslationSpec spec;
};

struct ReferenceExpectation {
    std::string map_name;
    std::vector<Rat> expected_image;    // declared pushforward of the fixed generator
};

struct Config {
    int schema_version = 0;
    std::vector<unsigned> ambient_dims;
    std::vector<std::vector<Int>> hypersurfaces;
    std::vector<std::size_t> fibration_indices;
    std::vector<MapDecl> maps;
    std::vector<std::string> composition;
    Hypotheses hypotheses;
    unsigned depth = 3;
    Rat width = Rat(1, int_pow(10, 12));
    std::vector<std::vector<Rat>> extra_effective;
    std::vector<ReferenceExpectation> references;

    const MapDecl* find_map(const std::string& name) const {
        for (const auto& m : maps)
            if (m.name == name) return &m;
        return nullptr;
    }
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

inline Int parse_int_tok(const std::string& tok, int line) {
    Rat r = [&] {
        try { return parse_rat(tok); }
        catch (const DomainError&) { throw ConfigError(line, "not an integer: '" + tok + "'"); }
    }();
    if (!r.is_integer()) throw ConfigError(line, "expected an integer, got '" + tok + "'");
    return r.num();
}

inline unsigned parse_unsigned_tok(const std::string& tok, int line) {
    Int v = parse_int_tok(tok, line);
    if (v < 0 || v > 1000000) throw ConfigError(line, "value out of range: '" + tok + "'");
    return unsigned(v);
}

inline bool parse_bool_tok(const std::string& tok, int line) {
    if (tok == "true") return true;
    if (tok == "false") return false;
    throw ConfigError(line, "expected true or false, got '" + tok + "'");
}

} // namespace detail

inline Config parse_config(std::istream& in) {
    Config cfg;
    std::string line, section;
    int line_no = 0;
    bool version_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;

        if (toks[0].front() == '[' && toks[0].back() == ']') {
            if (!version_seen)
                throw ConfigError(line_no, "schema_version must come before any section");
            if (toks.size() != 1)
                throw ConfigError(line_no, "unexpected tokens after section header");
            section = toks[0].substr(1, toks[0].size() - 2);
            static const char* known[] = {"ambient", "variety", "fibrations", "maps",
                                          "composition", "hypotheses", "options",
                                          "effective", "reference"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) throw ConfigError(line_no, "unknown section [" + section + "]");
            continue;
        }

        if (!version_seen) {
            if (toks[0] != "schema_version" || toks.size() != 2)
                throw ConfigError(line_no, "expected 'schema_version 1' first");
            cfg.schema_version = int(detail::parse_int_tok(toks[1], line_no));
            if (cfg.schema_version != 1)
                throw ConfigError(line_no, "unsupported schema_version " + toks[1]);
            version_seen = true;
            continue;
        }

        const std::string& key = toks[0];
        auto need_args = [&](std::size_t n) {
            if (toks.size() != n + 1)
                throw ConfigError(line_no, "'" + key + "' expects " + std::to_string(n) +
                                           " value(s)");
        };

        if (section == "ambient" && key == "dims") {
            if (toks.size() < 2) throw ConfigError(line_no, "dims needs at least one entry");
            for (std::size_t t = 1; t < toks.size(); ++t) {
                unsigned d = detail::parse_unsigned_tok(toks[t], line_no);
                if (d == 0) throw ConfigError(line_no, "factor dimension must be >= 1");
                cfg.ambient_dims.push_back(d);
            }
        } else if (section == "variety" && key == "hypersurface") {
            if (toks.size() < 2) throw ConfigError(line_no, "hypersurface needs multidegrees");
            std::vector<Int> row;
            for (std::size_t t = 1; t < toks.size(); ++t) {
                Int d = detail::parse_int_tok(toks[t], line_no);
                if (d < 0) throw ConfigError(line_no, "multidegree must be nonnegative");
                row.push_back(d);
            }
            cfg.hypersurfaces.push_back(std::move(row));
        } else if (section == "fibrations" && key == "indices") {
            for (std::size_t t = 1; t < toks.size(); ++t)
                cfg.fibration_indices.push_back(detail::parse_unsigned_tok(toks[t], line_no));
        } else if (section == "maps" && key == "map") {
            need_args(4);
            MapDecl decl;
            decl.name = toks[1];
            if (cfg.find_map(decl.name))
                throw ConfigError(line_no, "duplicate map name '" + decl.name + "'");
            decl.spec.i = detail::parse_unsigned_tok(toks[2], line_no);
            decl.spec.j = detail::parse_unsigned_tok(toks[3], line_no);
            decl.spec.k = detail::parse_unsigned_tok(toks[4], line_no);
            cfg.maps.push_back(std::move(decl));
        } else if (section == "composition" && key == "order") {
            for (std::size_t t = 1; t < toks.size(); ++t)
                cfg.composition.push_back(toks[t]);
        } else if (section == "hypotheses" && key == "minimal_calabi_yau") {
            need_args(1);
            cfg.hypotheses.minimal_cy = detail::parse_bool_tok(toks[1], line_no);
        } else if (section == "hypotheses" && key == "dimension") {
            need_args(1);
            cfg.hypotheses.dimension = detail::parse_unsigned_tok(toks[1], line_no);
        } else if (section == "hypotheses" && key == "picard_number") {
            need_args(1);
            cfg.hypotheses.picard_number = detail::parse_unsigned_tok(toks[1], line_no);
        } else if (section == "hypotheses" && key == "m_abundant") {
            need_args(1);
            cfg.hypotheses.abundant = detail::parse_bool_tok(toks[1], line_no);
        } else if (section == "options" && key == "depth") {
            need_args(1);
            cfg.depth = detail::parse_unsigned_tok(toks[1], line_no);
        } else if (section == "options" && key == "width") {
            need_args(1);
            Rat w = [&] {
                try { return parse_rat(toks[1]); }
                catch (const DomainError& e) { throw ConfigError(line_no, e.what()); }
            }();
            if (!(w > Rat(0))) throw ConfigError(line_no, "width must be positive");
            cfg.width = w;
        } else if (section == "effective" && key == "witness") {
            if (toks.size() < 2) throw ConfigError(line_no, "witness needs coordinates");
            std::vector<Rat> v;
            for (std::size_t t = 1; t < toks.size(); ++t) {
                try { v.push_back(parse_rat(toks[t])); }
                catch (const DomainError& e) { throw ConfigError(line_no, e.what()); }
            }
            cfg.extra_effective.push_back(std::move(v));
        } else if (section == "reference" && key == "expect_pushforward_of_fixed") {
            if (toks.size() < 3)
                throw ConfigError(line_no, "expect_pushforward_of_fixed needs a map name "
                                           "and coordinates");
            ReferenceExpectation ref;
            ref.map_name = toks[1];
            for (std::size_t t = 2; t < toks.size(); ++t) {
                try { ref.expected_image.push_back(parse_rat(toks[t])); }
                catch (const DomainError& e) { throw ConfigError(line_no, e.what()); }
            }
            cfg.references.push_back(std::move(ref));
        } else if (section.empty()) {
            throw ConfigError(line_no, "'" + key + "' outside any section");
        } else {
            throw ConfigError(line_no, "unknown key '" + key + "' in section [" + section + "]");
        }
    }

    // Cross-field validation, still with helpful positions where possible.
    if (!version_seen) throw ConfigError(line_no, "empty config: missing schema_version");
    if (cfg.ambient_dims.empty()) throw ConfigError(line_no, "missing [ambient] dims");
    std::size_t factors = cfg.ambient_dims.size();
    for (const auto& row : cfg.hypersurfaces)
        if (row.size() != factors)
            throw ConfigError(line_no, "hypersurface multidegree count differs from the "
                                       "number of ambient factors");
    for (std::size_t idx : cfg.fibration_indices)
        if (idx < 1 || idx > factors)
            throw ConfigError(line_no, "fibration index " + std::to_string(idx) +
                                       " out of range 1.." + std::to_string(factors));
    for (std::size_t a = 0; a < cfg.fibration_indices.size(); ++a)
        for (std::size_t b = a + 1; b < cfg.fibration_indices.size(); ++b)
            if (cfg.fibration_indices[a] == cfg.fibration_indices[b])
                throw ConfigError(line_no, "duplicate fibration index");
    for (const auto& m : cfg.maps) {
        try { m.spec.validate(factors); }
        catch (const Error& e) {
            throw ConfigError(line_no, "map " + m.name + ": " + e.what());
        }
    }
    for (const auto& name : cfg.composition)
        if (!cfg.find_map(name))
            throw ConfigError(line_no, "composition names undeclared map '" + name + "'");
    for (const auto& v : cfg.extra_effective)
        if (v.size() != factors)
            throw ConfigError(line_no, "witness coordinate count differs from the lattice rank");
    for (const auto& r : cfg.references) {
        if (!cfg.find_map(r.map_name))
            throw ConfigError(line_no, "reference names undeclared map '" + r.map_name + "'");
        if (r.expected_image.size() != factors)
            throw ConfigError(line_no, "reference coordinate count differs from the "
                                       "lattice rank");
    }
    return cfg;
}

inline Config parse_config_text(const std::string& text) {
    std::istringstream ss(text);
    return parse_config(ss);
}

} // namespace cydyn

#endif
