#include "svsa/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace svsa {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    int line = 1;

    bool done() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    char take() {
        const char c = s[pos++];
        if (c == '\n') ++line;
        return c;
    }
    void skip_ws_inline() {
        while (!done() && (peek() == ' ' || peek() == '\t')) take();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw TomlParseError("toml parse error at line " + std::to_string(line) + ": " + msg);
    }
};

std::string parse_basic_string(Cursor& c) {
    c.take(); // opening quote
    std::string out;
    while (!c.done()) {
        const char ch = c.take();
        if (ch == '"') return out;
        if (ch == '\\') {
            if (c.done()) c.fail("dangling escape");
            const char esc = c.take();
            switch (esc) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case 'r': out += '\r'; break;
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            default: c.fail(std::string("unsupported escape \\") + esc);
            }
            continue;
        }
        if (ch == '\n') c.fail("unterminated string");
        out += ch;
    }
    c.fail("unterminated string");
}

nlohmann::json parse_value(Cursor& c);

nlohmann::json parse_array(Cursor& c) {
    c.take(); // '['
    nlohmann::json arr = nlohmann::json::array();
    for (;;) {
        // arrays may span lines
        while (!c.done() && (c.peek() == ' ' || c.peek() == '\t' || c.peek() == '\n' ||
                             c.peek() == '\r' || c.peek() == '#')) {
            if (c.peek() == '#') {
                while (!c.done() && c.peek() != '\n') c.take();
            } else {
                c.take();
            }
        }
        if (c.done()) c.fail("unterminated array");
        if (c.peek() == ']') {
            c.take();
            return arr;
        }
        arr.push_back(parse_value(c));
        while (!c.done() && (c.peek() == ' ' || c.peek() == '\t' || c.peek() == '\n' ||
                             c.peek() == '\r' || c.peek() == '#')) {
            if (c.peek() == '#') {
                while (!c.done() && c.peek() != '\n') c.take();
            } else {
                c.take();
            }
        }
        if (c.done()) c.fail("unterminated array");
        if (c.peek() == ',') {
            c.take();
            continue;
        }
        if (c.peek() == ']') {
            c.take();
            return arr;
        }
        c.fail("expected ',' or ']' in array");
    }
}

nlohmann::json parse_scalar(Cursor& c) {
    std::string token;
    while (!c.done()) {
        const char ch = c.peek();
        if (ch == ',' || ch == ']' || ch == '\n' || ch == '#' || ch == ' ' || ch == '\t') break;
        token += c.take();
    }
    if (token.empty()) c.fail("expected a value");
    if (token == "true") return true;
    if (token == "false") return false;
    // integer or float
    try {
        std::size_t used = 0;
        if (token.find_first_of(".eE") == std::string::npos &&
            token.find("inf") == std::string::npos && token.find("nan") == std::string::npos) {
            const long long v = std::stoll(token, &used);
            if (used == token.size()) return v;
        }
        const double v = std::stod(token, &used);
        if (used == token.size()) return v;
    } catch (const std::exception&) {
    }
    c.fail("cannot parse value '" + token + "'");
}

nlohmann::json parse_value(Cursor& c) {
    if (c.peek() == '"') return parse_basic_string(c);
    if (c.peek() == '[') return parse_array(c);
    return parse_scalar(c);
}

std::string parse_key(Cursor& c) {
    c.skip_ws_inline();
    if (!c.done() && c.peek() == '"') return parse_basic_string(c);
    std::string key;
    while (!c.done()) {
        const char ch = c.peek();
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.')
            key += c.take();
        else
            break;
    }
    if (key.empty()) c.fail("expected a key");
    return key;
}

nlohmann::json* descend(nlohmann::json& root, const std::string& dotted, Cursor& c) {
    nlohmann::json* node = &root;
    std::stringstream ss(dotted);
    std::string part;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) c.fail("empty table name component");
        if (!node->contains(part)) (*node)[part] = nlohmann::json::object();
        node = &(*node)[part];
        if (!node->is_object()) c.fail("table name collides with a value: " + part);
    }
    return node;
}

} // namespace

nlohmann::json toml_lite_parse(const std::string& text) {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* table = &root;
    Cursor c{text};
    while (!c.done()) {
        c.skip_ws_inline();
        if (c.done()) break;
        const char ch = c.peek();
        if (ch == '\n' || ch == '\r') {
            c.take();
            continue;
        }
        if (ch == '#') {
            while (!c.done() && c.peek() != '\n') c.take();
            continue;
        }
        if (ch == '[') {
            c.take();
            c.skip_ws_inline();
            const std::string name = parse_key(c);
            c.skip_ws_inline();
            if (c.done() || c.peek() != ']') c.fail("expected ']' after table name");
            c.take();
            table = descend(root, name, c);
            continue;
        }
        const std::string key = parse_key(c);
        c.skip_ws_inline();
        if (c.done() || c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
        c.take();
        c.skip_ws_inline();
        nlohmann::json* target = table;
        std::string leaf = key;
        if (const auto dotpos = key.rfind('.'); dotpos != std::string::npos) {
            target = descend(*table, key.substr(0, dotpos), c);
            leaf = key.substr(dotpos + 1);
        }
        (*target)[leaf] = parse_value(c);
        c.skip_ws_inline();
        if (!c.done() && c.peek() == '#')
            while (!c.done() && c.peek() != '\n') c.take();
        if (!c.done() && c.peek() != '\n' && c.peek() != '\r')
            c.fail("unexpected trailing characters after value for key '" + key + "'");
    }
    return root;
}

nlohmann::json toml_lite_parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TomlParseError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return toml_lite_parse(ss.str());
}

} // namespace svsa
