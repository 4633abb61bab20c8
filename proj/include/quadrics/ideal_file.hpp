#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "quadrics/ideal.hpp"
#include "quadrics/parse.hpp"

namespace quadrics {

struct IdealFileError : std::runtime_error {
    IdealFileError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line(line) {}
    int line;
};

// Plain-text ideal description:
//
//   # comment
//   vars: x y z
//   field: Q            (optional; or Fp:<prime> to request screened mode)
//   name: some-label    (optional)
//   group: some-label   (optional, used by corpus summaries)
//   x^2 - y*z           (one generator per line)
//   expect: e1 = 4      (optional expectations, used by verify-corpus)
struct IdealFile {
    std::string name;
    std::string group;
    std::vector<std::string> variables;
    bool rational_field = true;   // false = screened at `prime`
    std::uint32_t prime = 0;
    std::vector<Polynomial> generators;
    std::map<std::string, std::string> expectations;

    int nvars() const { return int(variables.size()); }
    IdealPtr ideal() const { return Ideal::make(nvars(), generators); }

    // Field tag and file-independent defaults folded into one place.
    Options options(Options base) const {
        if (!rational_field) {
            base.mode = Mode::screened;
            base.prime = prime;
        }
        return base;
    }
};

namespace detail {

inline std::string trim(std::string s) {
    auto sp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && sp(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && sp(s[i])) ++i;
    return s.substr(i);
}

inline bool directive(const std::string& line, std::string* key,
                      std::string* value) {
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) return false;
    std::string head = line.substr(0, colon);
    for (char c : head)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    *key = head;
    *value = trim(line.substr(colon + 1));
    return true;
}

}  // namespace detail

inline IdealFile parse_ideal_file(const std::string& text) {
    IdealFile out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool seen_vars = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        line = detail::trim(line);
        if (line.empty()) continue;

        std::string key, value;
        if (detail::directive(line, &key, &value)) {
            if (key == "vars") {
                if (seen_vars)
                    throw IdealFileError("duplicate vars: line", lineno);
                std::istringstream vs(value);
                std::string v;
                while (vs >> v) {
                    for (const auto& prev : out.variables)
                        if (prev == v)
                            throw IdealFileError("duplicate variable '" + v + "'",
                                                 lineno);
                    out.variables.push_back(v);
                }
                if (out.variables.empty())
                    throw IdealFileError("vars: needs at least one variable",
                                         lineno);
                seen_vars = true;
            } else if (key == "field") {
                if (value == "Q") {
                    out.rational_field = true;
                } else if (value.rfind("Fp:", 0) == 0) {
                    long long p = 0;
                    try {
                        p = std::stoll(value.substr(3));
                    } catch (const std::exception&) {
                        throw IdealFileError("bad prime in field tag", lineno);
                    }
                    if (p < 2 || p > 0x7fffffff)
                        throw IdealFileError("prime out of range", lineno);
                    out.rational_field = false;
                    out.prime = std::uint32_t(p);
                } else {
                    throw IdealFileError(
                        "field must be Q or Fp:<prime>, got '" + value + "'",
                        lineno);
                }
            } else if (key == "name") {
                out.name = value;
            } else if (key == "group") {
                out.group = value;
            } else if (key == "expect") {
                std::size_t eq = value.find('=');
                if (eq == std::string::npos)
                    throw IdealFileError("expect: needs 'key = value'", lineno);
                std::string ek = detail::trim(value.substr(0, eq));
                std::string ev = detail::trim(value.substr(eq + 1));
                if (ek.empty() || ev.empty())
                    throw IdealFileError("expect: needs 'key = value'", lineno);
                if (!out.expectations.emplace(ek, ev).second)
                    throw IdealFileError("duplicate expectation '" + ek + "'",
                                         lineno);
            } else {
                throw IdealFileError("unknown directive '" + key + ":'", lineno);
            }
            continue;
        }

        if (!seen_vars)
            throw IdealFileError("generator before vars: line", lineno);
        Polynomial g = [&] {
            try {
                return parse_polynomial(line, out.variables);
            } catch (const ParseError& e) {
                throw IdealFileError(e.what(), lineno);
            }
        }();
        int deg = 0;
        if (!g.is_homogeneous(&deg))
            throw IdealFileError("generator is not homogeneous", lineno);
        if (g.is_zero() || deg == 0)
            throw IdealFileError("generator is zero or a unit", lineno);
        out.generators.push_back(std::move(g));
    }
    if (!seen_vars) throw IdealFileError("missing vars: line", lineno);
    if (out.generators.empty())
        throw IdealFileError("no generators", lineno);
    return out;
}

inline IdealFile load_ideal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    IdealFile out = parse_ideal_file(buf.str());
    if (out.name.empty()) {
        std::size_t slash = path.find_last_of("/\\");
        std::string stem =
            slash == std::string::npos ? path : path.substr(slash + 1);
        std::size_t dot = stem.find_last_of('.');
        out.name = dot == std::string::npos ? stem : stem.substr(0, dot);
    }
    return out;
}

}  // namespace quadrics
