#pragma once
/**
 * @file io.hpp
 * @brief JSON/CSV serialization, schema tags, and experiment manifests.
 *
 * All integers cross the JSON boundary as decimal strings (so downstream
 * tools never truncate past 53 bits) and all rationals as "p/q" strings.
 * Every document carries a "schema": "spart-lab/1" tag.  A manifest records
 * the command, its full parameter set, the library version, and the hashes
 * of any input files; rerunning the same manifest reproduces the output
 * byte for byte (nothing time- or host-dependent is ever emitted).
 */

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "sparts/decomp.hpp"
#include "sparts/integer.hpp"
#include "sparts/multipoly.hpp"
#include "sparts/numfield.hpp"

namespace sparts::io {

using Json = nlohmann::json;  // objects keep keys sorted: deterministic dumps

inline constexpr const char* kSchemaTag = "spart-lab/1";
inline constexpr const char* kLibraryVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Scalar encodings
// ---------------------------------------------------------------------------

inline std::string to_dec(const Int& x) { return x.str(); }

/// Strict decimal parse: optional sign, digits only; leading zeros tolerated
/// (and stripped before construction, since bare cpp_int would read octal).
inline Int int_from_dec(const std::string& s) {
    SPARTS_CHECK(!s.empty(), "empty integer literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    SPARTS_CHECK(i < s.size(), "integer literal has no digits");
    for (std::size_t j = i; j < s.size(); ++j)
        SPARTS_CHECK(s[j] >= '0' && s[j] <= '9',
                     "integer literal contains a non-digit: " + s);
    while (i + 1 < s.size() && s[i] == '0') ++i;
    std::string body = s.substr(i);
    Int v(body);
    if (s[0] == '-') v = -v;
    return v;
}

inline std::string to_frac(const Rat& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

/// Accepts "p" or "p/q" with q != 0; the sign is normalized onto p.
inline Rat rat_from_frac(const std::string& s) {
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) return Rat(int_from_dec(s));
    Int p = int_from_dec(s.substr(0, slash));
    Int q = int_from_dec(s.substr(slash + 1));
    SPARTS_CHECK(!q.is_zero(), "rational literal with zero denominator: " + s);
    return Rat(p, q);
}

/// Shortest deterministic round-trip text for a double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Hashing and manifests
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    SPARTS_CHECK(in.good(), "cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Json make_manifest(const std::string& command, Json parameters,
                          Json input_hashes = Json::object()) {
    Json m;
    m["schema"] = kSchemaTag;
    m["command"] = command;
    m["parameters"] = std::move(parameters);
    m["library_version"] = kLibraryVersion;
    m["input_hashes"] = std::move(input_hashes);
    return m;
}

inline std::string manifest_hash(const Json& manifest) {
    return fnv1a64_hex(manifest.dump());
}

// ---------------------------------------------------------------------------
// JSON access helpers
// ---------------------------------------------------------------------------

inline const Json& need(const Json& j, const char* key) {
    SPARTS_CHECK(j.is_object(), std::string("expected an object holding \"") + key + "\"");
    auto it = j.find(key);
    SPARTS_CHECK(it != j.end(), std::string("missing required key \"") + key + "\"");
    return *it;
}

inline void check_schema(const Json& j) {
    const Json& tag = need(j, "schema");
    SPARTS_CHECK(tag.is_string() && tag.get<std::string>() == kSchemaTag,
                 std::string("unsupported schema tag; expected ") + kSchemaTag);
}

inline Int int_from_json(const Json& j) {
    if (j.is_string()) return int_from_dec(j.get<std::string>());
    SPARTS_CHECK(j.is_number_integer(), "expected an integer (decimal string)");
    return Int(j.get<std::int64_t>());
}

inline Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_from_frac(j.get<std::string>());
    SPARTS_CHECK(j.is_number_integer(), "expected a rational (\"p/q\" string)");
    return Rat(j.get<std::int64_t>());
}

// ---------------------------------------------------------------------------
// Number fields, automorphisms, decomposable forms
// ---------------------------------------------------------------------------

inline Json field_to_json(const NumberField& K) {
    Json coeffs = Json::array();
    for (const Int& c : K.min_poly().coeffs()) coeffs.push_back(to_dec(c));
    return Json{{"min_poly", std::move(coeffs)}};
}

inline NumberField field_from_json(const Json& j) {
    const Json& mp = need(j, "min_poly");
    SPARTS_CHECK(mp.is_array() && !mp.empty(), "min_poly must be a coefficient array");
    std::vector<Int> coeffs;
    for (const Json& c : mp) coeffs.push_back(int_from_json(c));
    return NumberField(IntPoly(std::move(coeffs)));
}

inline FieldElement element_from_json(const NumberField& K, const Json& j) {
    SPARTS_CHECK(j.is_array(), "field element must be an array of rationals");
    FieldElement e;
    for (const Json& c : j) e.push_back(rat_from_json(c));
    return K.element(std::move(e));
}

inline Json element_to_json(const FieldElement& e) {
    Json out = Json::array();
    for (const Rat& c : e) out.push_back(to_frac(c));
    return out;
}

inline Json group_to_json(const AutomorphismGroup& g) {
    Json out = Json::array();
    for (const FieldElement& img : g.images) out.push_back(element_to_json(img));
    return out;
}

inline AutomorphismGroup group_from_json(const NumberField& K, const Json& j) {
    SPARTS_CHECK(j.is_array() && !j.empty(),
                 "automorphisms must be a non-empty array of generator images");
    std::vector<FieldElement> images;
    for (const Json& img : j) images.push_back(element_from_json(K, img));
    return validate_automorphisms(K, images);
}

inline Json multipoly_to_json(const MultiPoly& F) {
    Json terms = Json::array();
    for (const auto& [exps, coeff] : F.terms()) {
        Json t;
        t["exponents"] = exps;
        t["coeff"] = to_dec(coeff);
        terms.push_back(std::move(t));
    }
    Json out;
    out["vars"] = F.vars();
    out["terms"] = std::move(terms);
    return out;
}

inline MultiPoly multipoly_from_json(const Json& j) {
    const Json& vars = need(j, "vars");
    SPARTS_CHECK(vars.is_number_unsigned() && vars.get<unsigned>() >= 1,
                 "integer form needs a positive variable count");
    unsigned m = vars.get<unsigned>();
    const Json& terms = need(j, "terms");
    SPARTS_CHECK(terms.is_array(), "integer form terms must be an array");
    MultiPoly::Terms map;
    for (const Json& t : terms) {
        const Json& ej = need(t, "exponents");
        SPARTS_CHECK(ej.is_array() && ej.size() == m,
                     "term exponents must list one entry per variable");
        std::vector<unsigned> exps;
        for (const Json& e : ej) {
            SPARTS_CHECK(e.is_number_unsigned(), "exponents must be non-negative integers");
            exps.push_back(e.get<unsigned>());
        }
        Int coeff = int_from_json(need(t, "coeff"));
        SPARTS_CHECK(map.emplace(std::move(exps), std::move(coeff)).second,
                     "duplicate exponent vector in the integer form");
    }
    return MultiPoly(m, std::move(map));
}

inline Json decomp_to_json(const DecomposableForm& F) {
    Json forms = Json::array();
    for (const WeightedForm& wf : F.factors()) {
        Json coeffs = Json::array();
        for (const FieldElement& c : wf.form.coeffs())
            coeffs.push_back(element_to_json(c));
        Json one;
        one["coeffs"] = std::move(coeffs);
        one["multiplicity"] = wf.multiplicity;
        forms.push_back(std::move(one));
    }
    Json out;
    out["schema"] = kSchemaTag;
    out["field"] = field_to_json(F.field());
    out["automorphisms"] = group_to_json(F.group());
    out["constant"] = to_frac(F.constant());
    out["linear_forms"] = std::move(forms);
    out["integer_form"] = multipoly_to_json(F.integer_form());
    return out;
}

/// Full parse + validation round: the returned form re-certifies the field,
/// the automorphism group, and the exact expansion.
inline DecomposableForm decomp_from_json(const Json& j) {
    check_schema(j);
    NumberField K = field_from_json(need(j, "field"));
    AutomorphismGroup group = group_from_json(K, need(j, "automorphisms"));
    Rat constant = rat_from_json(need(j, "constant"));
    const Json& forms = need(j, "linear_forms");
    SPARTS_CHECK(forms.is_array() && !forms.empty(),
                 "linear_forms must be a non-empty array");
    std::vector<WeightedForm> factors;
    for (const Json& one : forms) {
        const Json& cj = need(one, "coeffs");
        SPARTS_CHECK(cj.is_array() && !cj.empty(),
                     "a linear form needs a non-empty coefficient array");
        std::vector<FieldElement> coeffs;
        for (const Json& c : cj) coeffs.push_back(element_from_json(K, c));
        const Json& mj = need(one, "multiplicity");
        SPARTS_CHECK(mj.is_number_unsigned() && mj.get<unsigned>() >= 1,
                     "multiplicities must be positive integers");
        factors.push_back(WeightedForm{LinearFormK(K, std::move(coeffs)),
                                       mj.get<unsigned>()});
    }
    MultiPoly integer_form = multipoly_from_json(need(j, "integer_form"));
    return validate_factorization(K, group, constant, std::move(factors),
                                  std::move(integer_form));
}

// ---------------------------------------------------------------------------
// Flag-string parsers shared by the CLI
// ---------------------------------------------------------------------------

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<Int> parse_int_list(const std::string& s) {
    SPARTS_CHECK(!s.empty(), "empty integer list");
    std::vector<Int> out;
    for (const std::string& tok : split(s, ',')) out.push_back(int_from_dec(tok));
    return out;
}

inline std::vector<std::int64_t> parse_i64_list(const std::string& s) {
    std::vector<std::int64_t> out;
    for (const Int& v : parse_int_list(s)) {
        SPARTS_CHECK(fits_int64(v), "list entry exceeds 64 bits: " + to_dec(v));
        out.push_back(to_int64(v));
    }
    return out;
}

/// "1,0;0,1" -> rows of rationals (rows split on ';', entries on ',').
inline std::vector<std::vector<Rat>> parse_basis(const std::string& s) {
    SPARTS_CHECK(!s.empty(), "empty basis");
    std::vector<std::vector<Rat>> rows;
    for (const std::string& row : split(s, ';')) {
        std::vector<Rat> r;
        for (const std::string& tok : split(row, ',')) r.push_back(rat_from_frac(tok));
        rows.push_back(std::move(r));
    }
    return rows;
}

/// "1:2,3:4" -> exponent pairs.
inline std::vector<std::pair<unsigned, unsigned>> parse_pair_list(const std::string& s) {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (const std::string& tok : split(s, ',')) {
        auto parts = split(tok, ':');
        SPARTS_CHECK(parts.size() == 2, "exponent pairs use the form k:l");
        Int k = int_from_dec(parts[0]), l = int_from_dec(parts[1]);
        SPARTS_CHECK(k >= 1 && l >= 1 && k < 1000000 && l < 1000000,
                     "exponent pair out of range");
        out.emplace_back(static_cast<unsigned>(to_int64(k)),
                         static_cast<unsigned>(to_int64(l)));
    }
    return out;
}

/// Standard basis of the rational m-space.
inline std::vector<std::vector<Rat>> standard_basis(unsigned m) {
    std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(m, Rat(0)));
    for (unsigned i = 0; i < m; ++i) rows[i][i] = Rat(1);
    return rows;
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

/**
 * Writes one CSV document: '#' comment lines carrying the schema tag, the
 * generating manifest hash, and any extra annotations, then the column
 * header, then the rows.
 */
inline std::string make_csv(const std::string& mhash,
                            const std::vector<std::string>& annotations,
                            const std::vector<std::string>& columns,
                            const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    out << "# schema=" << kSchemaTag << " manifest=" << mhash << "\n";
    for (const std::string& a : annotations) out << "# " << a << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
        SPARTS_CHECK(row.size() == columns.size(), "CSV row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

}  // namespace sparts::io
