#pragma once

// Reader for the TOML subset used by data and scenario files: tables, arrays of
// tables, key/value pairs, basic and literal strings, integers, floats, booleans,
// arrays and inline tables. Dotted keys, dates and multi-line strings are not
// supported.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace nucleoq::toml {

struct Value {
    enum class Type { Bool, Integer, Float, String, Array, Table };

    Type type = Type::Bool;
    bool boolean = false;
    std::int64_t integer = 0;
    double number = 0.0;
    std::string text;
    std::vector<Value> items;
    std::vector<std::string> keys;  // populated for Type::Table, parallel to items
    int line = 0;

    bool is_number() const { return type == Type::Integer || type == Type::Float; }
    bool is_table() const { return type == Type::Table; }
    bool is_array() const { return type == Type::Array; }
    bool is_string() const { return type == Type::String; }

    double as_number() const;
    std::int64_t as_integer() const;
    bool as_bool() const;
    const std::string& as_string() const;

    // Table access; these keep insertion order.
    const Value* find(const std::string& key) const;
    Value* find(const std::string& key);
    Value& insert(const std::string& key, Value v);

    std::string type_name() const;
};

Value make_table(int line = 0);

Value parse(const std::string& text, const std::string& source = "<string>");
Value parse_file(const std::filesystem::path& path);

}  // namespace nucleoq::toml
