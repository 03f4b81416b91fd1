#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hh/chebyshev.hpp"
#include "hh/error_model.hpp"
#include "hh/errors.hpp"
#include "hh/function.hpp"
#include "hh/measure.hpp"

namespace hh {

// ---------------------------------------------------------------------------
// Catalog value syntax (documented in the README):
//
//   function  poly:c0,c1,...  exp:k  abs:center  sin:freq  const:c
//   system    linear | exp | trig | trig:delta | power:a,b
//   measure   lebesgue | density:<function> | atoms:[(t,w),...]
//             | density:<function>+atoms:[(t,w),...]
//   error     zero | const:c | measured
//             | power2:[(p,q,c),...] | power3:[(p,q,r,c),...]
//             | dyadic:alpha=<function>,n=<int>
//
// Config files are flat `key = value` lines; '#' starts a comment.
// ---------------------------------------------------------------------------

/// Locale-independent shortest round-trip formatting for doubles.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw internal_error("format_double: to_chars failed");
    return std::string(buf, ptr);
}

namespace detail {

[[noreturn]] inline void fail_at(const std::string& what, int line, std::size_t col) {
    throw parse_error("line " + std::to_string(line) + ", col " + std::to_string(col + 1) + ": " +
                      what);
}

/// Cursor over one config value, tracking position for diagnostics.
struct ValueCursor {
    std::string text;
    int line = 0;
    std::size_t pos = 0;

    [[nodiscard]] bool done() const { return pos >= text.size(); }
    [[nodiscard]] char peek() const { return done() ? '\0' : text[pos]; }

    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c)) fail_at(std::string("expected '") + c + "'", line, pos);
    }

    double number() {
        double v = 0.0;
        const char* begin = text.data() + pos;
        const char* end = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr == begin) fail_at("expected a number", line, pos);
        pos += static_cast<std::size_t>(ptr - begin);
        return v;
    }

    std::vector<double> number_list() {
        std::vector<double> out;
        out.push_back(number());
        while (consume(',')) out.push_back(number());
        return out;
    }

    /// [(a,b),(c,d),...] with a fixed tuple arity.
    std::vector<std::vector<double>> tuple_list(std::size_t arity) {
        std::vector<std::vector<double>> out;
        expect('[');
        if (!consume(']')) {
            do {
                expect('(');
                std::vector<double> tup = number_list();
                expect(')');
                if (tup.size() != arity)
                    fail_at("expected a " + std::to_string(arity) + "-tuple, got " +
                                std::to_string(tup.size()) + " fields",
                            line, pos);
                out.push_back(std::move(tup));
            } while (consume(','));
            expect(']');
        }
        return out;
    }

    void expect_end() {
        if (!done()) fail_at("unexpected trailing text '" + text.substr(pos) + "'", line, pos);
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// Typed specs.  These are the parse results; resolve_* turns them into
// live objects.
// ---------------------------------------------------------------------------

struct FunctionSpec {
    std::string kind;            // poly | exp | abs | sin | const
    std::vector<double> params;
    friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

struct SystemSpec {
    std::string kind;            // linear | exp | trig | power
    std::vector<double> params;  // trig: optional delta; power: a, b
    friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

struct MeasureSpec {
    bool lebesgue = false;
    std::optional<FunctionSpec> density;
    std::vector<std::pair<double, double>> atoms;
    friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

struct ErrorSpec {
    std::string kind;  // zero | const | measured | power2 | power3 | dyadic
    double value = 0.0;                       // const
    PowerMeasure2 nu2;                        // power2
    PowerMeasure3 nu3;                        // power3
    std::optional<FunctionSpec> alpha;        // dyadic
    int n_terms = 40;                         // dyadic
    friend bool operator==(const ErrorSpec&, const ErrorSpec&) = default;
};

inline FunctionSpec parse_function_spec(const std::string& s, int line = 0) {
    detail::ValueCursor cur{s, line, 0};
    const auto colon = s.find(':');
    if (colon == std::string::npos) detail::fail_at("function spec needs 'kind:params'", line, 0);
    FunctionSpec spec;
    spec.kind = s.substr(0, colon);
    cur.pos = colon + 1;
    if (spec.kind == "poly") {
        spec.params = cur.number_list();
    } else if (spec.kind == "exp" || spec.kind == "abs" || spec.kind == "sin" ||
               spec.kind == "const") {
        spec.params = {cur.number()};
    } else {
        detail::fail_at("unknown function kind '" + spec.kind + "'", line, 0);
    }
    cur.expect_end();
    return spec;
}

inline std::string serialize(const FunctionSpec& f) {
    std::string out = f.kind + ":";
    for (std::size_t i = 0; i < f.params.size(); ++i)
        out += (i ? "," : "") + format_double(f.params[i]);
    return out;
}

inline SystemSpec parse_system_spec(const std::string& s, int line = 0) {
    SystemSpec spec;
    const auto colon = s.find(':');
    spec.kind = s.substr(0, colon == std::string::npos ? s.size() : colon);
    detail::ValueCursor cur{s, line, colon == std::string::npos ? s.size() : colon + 1};
    if (spec.kind == "linear" || spec.kind == "exp") {
        if (colon != std::string::npos) detail::fail_at("system takes no parameters", line, colon);
    } else if (spec.kind == "trig") {
        if (colon != std::string::npos) spec.params = {cur.number()};
    } else if (spec.kind == "power") {
        if (colon == std::string::npos) detail::fail_at("power system needs ':a,b'", line, 0);
        spec.params = cur.number_list();
        if (spec.params.size() != 2) detail::fail_at("power system needs exactly a,b", line, colon);
    } else {
        detail::fail_at("unknown system '" + spec.kind + "'", line, 0);
    }
    cur.expect_end();
    return spec;
}

inline std::string serialize(const SystemSpec& s) {
    std::string out = s.kind;
    for (std::size_t i = 0; i < s.params.size(); ++i)
        out += (i ? "," : ":") + format_double(s.params[i]);
    return out;
}

inline MeasureSpec parse_measure_spec(const std::string& s, int line = 0) {
    MeasureSpec spec;
    if (s == "lebesgue") {
        spec.lebesgue = true;
        return spec;
    }
    std::string rest = s;
    if (rest.rfind("density:", 0) == 0) {
        rest = rest.substr(8);
        const auto plus = rest.find("+atoms:");
        const std::string fn = plus == std::string::npos ? rest : rest.substr(0, plus);
        spec.density = parse_function_spec(fn, line);
        rest = plus == std::string::npos ? std::string() : rest.substr(plus + 1);
    }
    if (!rest.empty()) {
        if (rest.rfind("atoms:", 0) != 0)
            detail::fail_at("expected 'lebesgue', 'density:<fn>' and/or 'atoms:[...]'", line, 0);
        detail::ValueCursor cur{rest, line, 6};
        for (const auto& tup : cur.tuple_list(2)) spec.atoms.emplace_back(tup[0], tup[1]);
        cur.expect_end();
    }
    if (!spec.lebesgue && !spec.density && spec.atoms.empty())
        detail::fail_at("empty measure spec", line, 0);
    return spec;
}

inline std::string serialize(const MeasureSpec& m) {
    if (m.lebesgue) return "lebesgue";
    std::string out;
    if (m.density) out += "density:" + serialize(*m.density);
    if (!m.atoms.empty()) {
        if (m.density) out += "+";
        out += "atoms:[";
        for (std::size_t i = 0; i < m.atoms.size(); ++i)
            out += (i ? "," : "") + ("(" + format_double(m.atoms[i].first) + "," +
                                     format_double(m.atoms[i].second) + ")");
        out += "]";
    }
    return out;
}

inline ErrorSpec parse_error_spec(const std::string& s, int line = 0) {
    ErrorSpec spec;
    if (s == "zero" || s == "measured") {
        spec.kind = s;
        return spec;
    }
    const auto colon = s.find(':');
    if (colon == std::string::npos) detail::fail_at("unknown error model '" + s + "'", line, 0);
    spec.kind = s.substr(0, colon);
    detail::ValueCursor cur{s, line, colon + 1};
    if (spec.kind == "const") {
        spec.value = cur.number();
        cur.expect_end();
    } else if (spec.kind == "power2") {
        for (const auto& tup : cur.tuple_list(3)) spec.nu2.atoms.push_back({tup[0], tup[1], tup[2]});
        cur.expect_end();
    } else if (spec.kind == "power3") {
        for (const auto& tup : cur.tuple_list(4))
            spec.nu3.atoms.push_back({tup[0], tup[1], tup[2], tup[3]});
        cur.expect_end();
    } else if (spec.kind == "dyadic") {
        // dyadic:alpha=<function>,n=<int>; the function spec itself may
        // contain commas, so split on the final ",n=".
        const std::string body = s.substr(colon + 1);
        if (body.rfind("alpha=", 0) != 0) detail::fail_at("dyadic needs 'alpha=<fn>,n=<int>'", line, colon);
        const auto nsplit = body.rfind(",n=");
        if (nsplit == std::string::npos) detail::fail_at("dyadic needs ',n=<int>'", line, colon);
        spec.alpha = parse_function_spec(body.substr(6, nsplit - 6), line);
        detail::ValueCursor ncur{body, line, nsplit + 3};
        const double n = ncur.number();
        ncur.expect_end();
        if (n < 1 || n != static_cast<int>(n)) detail::fail_at("dyadic n must be a positive integer", line, nsplit);
        spec.n_terms = static_cast<int>(n);
    } else {
        detail::fail_at("unknown error model '" + spec.kind + "'", line, 0);
    }
    return spec;
}

inline std::string serialize(const ErrorSpec& e) {
    if (e.kind == "zero" || e.kind == "measured") return e.kind;
    if (e.kind == "const") return "const:" + format_double(e.value);
    if (e.kind == "power2") {
        std::string out = "power2:[";
        for (std::size_t i = 0; i < e.nu2.atoms.size(); ++i) {
            const auto& a = e.nu2.atoms[i];
            out += (i ? "," : "") + ("(" + format_double(a.p) + "," + format_double(a.q) + "," +
                                     format_double(a.c) + ")");
        }
        return out + "]";
    }
    if (e.kind == "power3") {
        std::string out = "power3:[";
        for (std::size_t i = 0; i < e.nu3.atoms.size(); ++i) {
            const auto& a = e.nu3.atoms[i];
            out += (i ? "," : "") + ("(" + format_double(a.p) + "," + format_double(a.q) + "," +
                                     format_double(a.r) + "," + format_double(a.c) + ")");
        }
        return out + "]";
    }
    if (e.kind == "dyadic")
        return "dyadic:alpha=" + serialize(*e.alpha) + ",n=" + std::to_string(e.n_terms);
    throw internal_error("serialize: unknown error spec kind '" + e.kind + "'");
}

// ---------------------------------------------------------------------------
// Resolution: specs -> live objects.
// ---------------------------------------------------------------------------

inline RealFunction resolve_function(const FunctionSpec& f, Interval dom = kWideDomain) {
    if (f.kind == "poly") return make_poly(f.params, dom);
    if (f.kind == "exp") return make_exp(f.params.at(0), dom);
    if (f.kind == "abs") return make_abs(f.params.at(0), dom);
    if (f.kind == "sin") return make_sin(f.params.at(0), dom);
    if (f.kind == "const") return make_const(f.params.at(0), dom);
    throw parse_error("unknown function kind '" + f.kind + "'");
}

inline ChebyshevSystem resolve_system(const SystemSpec& s) {
    if (s.kind == "linear") return system_linear();
    if (s.kind == "exp") return system_exp();
    if (s.kind == "trig") return s.params.empty() ? system_trig() : system_trig(s.params[0]);
    if (s.kind == "power") return system_power(s.params.at(0), s.params.at(1));
    throw parse_error("unknown system '" + s.kind + "'");
}

inline UnitMeasure resolve_measure(const MeasureSpec& m, const QuadratureConfig& q = {}) {
    if (m.lebesgue) return lebesgue_measure();
    RealFunction density = m.density ? resolve_function(*m.density, Interval{-0.5, 1.5})
                                     : make_const(0.0, Interval{-0.5, 1.5});
    UnitMeasure mu = make_measure(std::move(density), m.atoms);
    const double total = mass(mu, 0.0, 1.0, true, true, q);
    mu.is_probability = std::fabs(total - 1.0) <= 1e-10;
    return mu;
}

/// Resolve an error spec that does not need a measured residual scan.
/// 'measured' models depend on the function under test and are built
/// at the call site via measured_eps / measured_eta_sup.
inline ErrorModel resolve_error(const ErrorSpec& e) {
    if (e.kind == "zero") return ErrorModel::zero();
    if (e.kind == "const") return ErrorModel::constant(e.value);
    if (e.kind == "power2") return ErrorModel::power2(e.nu2);
    if (e.kind == "power3") return ErrorModel::power3(e.nu3);
    if (e.kind == "dyadic")
        return ErrorModel::dyadic(resolve_function(*e.alpha, Interval{-1e3, 1e3}), e.n_terms);
    if (e.kind == "measured")
        throw input_error("error model 'measured' needs a function context; build it via measured_eps");
    throw parse_error("unknown error model '" + e.kind + "'");
}

// ---------------------------------------------------------------------------
// Flat key = value config files.
// ---------------------------------------------------------------------------

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

struct ConfigDoc {
    std::vector<ConfigEntry> entries;

    [[nodiscard]] const ConfigEntry* find(const std::string& key) const {
        for (const auto& e : entries)
            if (e.key == key) return &e;
        return nullptr;
    }

    [[nodiscard]] std::string get(const std::string& key, const std::string& fallback) const {
        const ConfigEntry* e = find(key);
        return e ? e->value : fallback;
    }
};

inline ConfigDoc parse_config_text(const std::string& text) {
    ConfigDoc doc;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        raw = trim(raw);
        if (raw.empty()) continue;
        const auto eq = raw.find('=');
        if (eq == std::string::npos)
            detail::fail_at("expected 'key = value'", line, 0);
        ConfigEntry e;
        e.key = trim(raw.substr(0, eq));
        e.value = trim(raw.substr(eq + 1));
        e.line = line;
        if (e.key.empty()) detail::fail_at("empty key", line, 0);
        doc.entries.push_back(std::move(e));
    }
    return doc;
}

inline ConfigDoc parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace hh
