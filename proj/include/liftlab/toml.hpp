#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "liftlab/errors.hpp"

namespace liftlab::minitoml {

// Minimal TOML subset for experiment configs: comments, [section] headers,
// and `key = value` lines with strings, booleans, integers, floats and
// single-line scalar arrays.  Keys are flattened to "section.key".

struct Value;
using Array = std::vector<Value>;

struct Value {
    std::variant<bool, std::int64_t, double, std::string, Array> v;

    bool is_bool() const { return std::holds_alternative<bool>(v); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
    bool is_number() const { return is_int() || std::holds_alternative<double>(v); }
    bool is_string() const { return std::holds_alternative<std::string>(v); }
    bool is_array() const { return std::holds_alternative<Array>(v); }

    double as_double() const {
        if (is_int()) return static_cast<double>(std::get<std::int64_t>(v));
        return std::get<double>(v);
    }
    std::int64_t as_int() const { return std::get<std::int64_t>(v); }
    bool as_bool() const { return std::get<bool>(v); }
    const std::string& as_string() const { return std::get<std::string>(v); }
    const Array& as_array() const { return std::get<Array>(v); }
};

struct Document {
    std::map<std::string, Value> entries;  // "section.key" or bare "key"
    std::map<std::string, int> lines;      // source line per key

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    const Value& at(const std::string& key) const { return entries.at(key); }
};

namespace detail {

inline void fail(int line, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

inline Value parse_scalar(const std::string& tok, int line) {
    if (tok.empty()) fail(line, "empty value");
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"') fail(line, "unterminated string");
        return Value{tok.substr(1, tok.size() - 2)};
    }
    if (tok == "true") return Value{true};
    if (tok == "false") return Value{false};
    bool is_float = tok.find_first_of(".eE") != std::string::npos || tok == "inf" || tok == "-inf" || tok == "nan";
    try {
        std::size_t used = 0;
        if (is_float) {
            double d = std::stod(tok, &used);
            if (used != tok.size()) fail(line, "bad number '" + tok + "'");
            return Value{d};
        }
        std::int64_t n = std::stoll(tok, &used);
        if (used != tok.size()) fail(line, "bad number '" + tok + "'");
        return Value{n};
    } catch (const Error&) {
        throw;
    } catch (...) {
        fail(line, "bad value '" + tok + "'");
    }
    return Value{false};
}

inline Value parse_value(const std::string& raw, int line) {
    std::string tok = trim(raw);
    if (!tok.empty() && tok.front() == '[') {
        if (tok.back() != ']') fail(line, "unterminated array");
        Array arr;
        std::string body = tok.substr(1, tok.size() - 2);
        std::string cur;
        bool in_str = false;
        for (char ch : body) {
            if (ch == '"') in_str = !in_str;
            if (ch == ',' && !in_str) {
                arr.push_back(parse_scalar(trim(cur), line));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!trim(cur).empty()) arr.push_back(parse_scalar(trim(cur), line));
        return Value{arr};
    }
    return parse_scalar(tok, line);
}

}  // namespace detail

inline Document parse(const std::string& text) {
    Document doc;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string line = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? text.size() + 1 : end + 1;
        ++line_no;

        line = detail::trim(detail::strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') detail::fail(line_no, "unterminated section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section.empty()) detail::fail(line_no, "empty section name");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) detail::fail(line_no, "expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        if (key.empty()) detail::fail(line_no, "empty key");
        for (char c : key)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-'))
                detail::fail(line_no, "bad key character in '" + key + "'");
        std::string full = section.empty() ? key : section + "." + key;
        if (doc.entries.count(full)) detail::fail(line_no, "duplicate key '" + full + "'");
        doc.entries[full] = detail::parse_value(line.substr(eq + 1), line_no);
        doc.lines[full] = line_no;
    }
    return doc;
}

}  // namespace liftlab::minitoml
