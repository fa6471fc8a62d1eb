#include "nucleoq/toml.hpp"

#include "nucleoq/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace nucleoq::toml {

double Value::as_number() const {
    if (type == Type::Integer) return static_cast<double>(integer);
    if (type == Type::Float) return number;
    throw ParseError("line " + std::to_string(line) + ": expected a number, found " + type_name());
}

std::int64_t Value::as_integer() const {
    if (type != Type::Integer)
        throw ParseError("line " + std::to_string(line) + ": expected an integer, found " +
                         type_name());
    return integer;
}

bool Value::as_bool() const {
    if (type != Type::Bool)
        throw ParseError("line " + std::to_string(line) + ": expected a boolean, found " +
                         type_name());
    return boolean;
}

const std::string& Value::as_string() const {
    if (type != Type::String)
        throw ParseError("line " + std::to_string(line) + ": expected a string, found " +
                         type_name());
    return text;
}

const Value* Value::find(const std::string& key) const {
    for (size_t i = 0; i < keys.size(); ++i)
        if (keys[i] == key) return &items[i];
    return nullptr;
}

Value* Value::find(const std::string& key) {
    for (size_t i = 0; i < keys.size(); ++i)
        if (keys[i] == key) return &items[i];
    return nullptr;
}

Value& Value::insert(const std::string& key, Value v) {
    keys.push_back(key);
    items.push_back(std::move(v));
    return items.back();
}

std::string Value::type_name() const {
    switch (type) {
        case Type::Bool: return "boolean";
        case Type::Integer: return "integer";
        case Type::Float: return "float";
        case Type::String: return "string";
        case Type::Array: return "array";
        case Type::Table: return "table";
    }
    return "?";
}

Value make_table(int line) {
    Value v;
    v.type = Value::Type::Table;
    v.line = line;
    return v;
}

namespace {

class Parser {
public:
    Parser(const std::string& text, std::string source) : s_(text), source_(std::move(source)) {}

    Value run() {
        Value root = make_table(1);
        Value* current = &root;
        while (true) {
            skip_ws_comments_newlines();
            if (eof()) break;
            if (peek() == '[') {
                current = header(root);
            } else {
                key_value(*current);
            }
        }
        return root;
    }

private:
    const std::string& s_;
    std::string source_;
    size_t pos_ = 0;
    int line_ = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(source_ + ":" + std::to_string(line_) + ": " + msg);
    }

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return eof() ? '\0' : s_[pos_]; }
    char get() {
        char c = s_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }

    void skip_comment() {
        if (peek() == '#')
            while (!eof() && peek() != '\n') ++pos_;
    }

    void skip_ws_comments_newlines() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') get();
            else if (c == '#') skip_comment();
            else break;
        }
    }

    void end_of_line() {
        skip_ws();
        skip_comment();
        if (peek() == '\r') ++pos_;
        if (!eof() && peek() != '\n') fail("unexpected trailing characters");
    }

    std::string key() {
        skip_ws();
        if (peek() == '"') return basic_string();
        if (peek() == '\'') return literal_string();
        size_t start = pos_;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                          peek() == '-'))
            ++pos_;
        if (start == pos_) fail("expected a key");
        return s_.substr(start, pos_ - start);
    }

    std::vector<std::string> dotted_path() {
        std::vector<std::string> parts;
        parts.push_back(key());
        skip_ws();
        while (peek() == '.') {
            ++pos_;
            parts.push_back(key());
            skip_ws();
        }
        return parts;
    }

    Value* header(Value& root) {
        ++pos_;
        bool array = false;
        if (peek() == '[') {
            array = true;
            ++pos_;
        }
        auto path = dotted_path();
        if (get() != ']') fail("expected ']'");
        if (array && get() != ']') fail("expected ']]'");
        end_of_line();

        Value* t = &root;
        for (size_t i = 0; i + 1 < path.size(); ++i) t = descend(*t, path[i]);
        const std::string& last = path.back();
        Value* existing = t->find(last);
        if (array) {
            if (!existing) {
                Value arr;
                arr.type = Value::Type::Array;
                arr.line = line_;
                existing = &t->insert(last, std::move(arr));
            }
            if (!existing->is_array()) fail("'" + last + "' is not an array of tables");
            existing->items.push_back(make_table(line_));
            return &existing->items.back();
        }
        if (existing) {
            if (!existing->is_table()) fail("'" + last + "' is not a table");
            if (existing->line != -1) fail("duplicate table '" + last + "'");
            existing->line = line_;
            return existing;
        }
        return &t->insert(last, make_table(line_));
    }

    // Intermediate tables created implicitly are tagged line -1 so that a later
    // explicit header for the same name is allowed.
    Value* descend(Value& t, const std::string& k) {
        Value* v = t.find(k);
        if (!v) return &t.insert(k, make_table(-1));
        if (v->is_array() && !v->items.empty() && v->items.back().is_table())
            return &v->items.back();
        if (!v->is_table()) fail("'" + k + "' is not a table");
        return v;
    }

    void key_value(Value& table) {
        std::string k = key();
        skip_ws();
        if (get() != '=') fail("expected '=' after key '" + k + "'");
        skip_ws();
        Value v = value();
        if (table.find(k)) fail("duplicate key '" + k + "'");
        table.insert(k, std::move(v));
        end_of_line();
    }

    Value value() {
        Value v;
        v.line = line_;
        char c = peek();
        if (c == '"') {
            v.type = Value::Type::String;
            v.text = basic_string();
        } else if (c == '\'') {
            v.type = Value::Type::String;
            v.text = literal_string();
        } else if (c == '[') {
            v = array();
        } else if (c == '{') {
            v = inline_table();
        } else if (s_.compare(pos_, 4, "true") == 0) {
            pos_ += 4;
            v.type = Value::Type::Bool;
            v.boolean = true;
        } else if (s_.compare(pos_, 5, "false") == 0) {
            pos_ += 5;
            v.type = Value::Type::Bool;
            v.boolean = false;
        } else {
            v = number();
        }
        return v;
    }

    std::string basic_string() {
        ++pos_;
        std::string out;
        while (true) {
            if (eof() || peek() == '\n') fail("unterminated string");
            char c = get();
            if (c == '"') break;
            if (c == '\\') {
                if (eof()) fail("unterminated escape");
                char e = get();
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail(std::string("unsupported escape \\") + e);
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    std::string literal_string() {
        ++pos_;
        size_t start = pos_;
        while (!eof() && peek() != '\'' && peek() != '\n') ++pos_;
        if (peek() != '\'') fail("unterminated literal string");
        std::string out = s_.substr(start, pos_ - start);
        ++pos_;
        return out;
    }

    Value number() {
        Value v;
        v.line = line_;
        size_t start = pos_;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' ||
                c == '_')
                ++pos_;
            else
                break;
        }
        std::string tok;
        for (size_t i = start; i < pos_; ++i)
            if (s_[i] != '_') tok += s_[i];
        if (tok.empty()) fail("expected a value");
        if (tok == "inf" || tok == "+inf" || tok == "-inf" || tok == "nan")
            fail("non-finite numbers are not accepted");
        bool is_float = tok.find_first_of(".eE") != std::string::npos;
        const char* b = tok.data();
        const char* e = tok.data() + tok.size();
        if (*b == '+') ++b;
        if (is_float) {
            double d = 0.0;
            auto r = std::from_chars(b, e, d);
            if (r.ec != std::errc() || r.ptr != e) fail("invalid number '" + tok + "'");
            v.type = Value::Type::Float;
            v.number = d;
        } else {
            std::int64_t i = 0;
            auto r = std::from_chars(b, e, i);
            if (r.ec != std::errc() || r.ptr != e) fail("invalid value '" + tok + "'");
            v.type = Value::Type::Integer;
            v.integer = i;
        }
        return v;
    }

    Value array() {
        Value v;
        v.type = Value::Type::Array;
        v.line = line_;
        ++pos_;
        while (true) {
            skip_ws_comments_newlines();
            if (eof()) fail("unterminated array");
            if (peek() == ']') {
                ++pos_;
                break;
            }
            v.items.push_back(value());
            skip_ws_comments_newlines();
            if (peek() == ',') {
                ++pos_;
            } else if (peek() == ']') {
                ++pos_;
                break;
            } else {
                fail("expected ',' or ']' in array");
            }
        }
        return v;
    }

    Value inline_table() {
        Value v = make_table(line_);
        ++pos_;
        skip_ws();
        if (peek() == '}') {
            ++pos_;
            return v;
        }
        while (true) {
            std::string k = key();
            skip_ws();
            if (get() != '=') fail("expected '=' in inline table");
            skip_ws();
            Value item = value();
            if (v.find(k)) fail("duplicate key '" + k + "'");
            v.insert(k, std::move(item));
            skip_ws();
            char c = get();
            if (c == '}') break;
            if (c != ',') fail("expected ',' or '}' in inline table");
            skip_ws();
        }
        return v;
    }
};

}  // namespace

Value parse(const std::string& text, const std::string& source) {
    return Parser(text, source).run();
}

Value parse_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

}  // namespace nucleoq::toml
