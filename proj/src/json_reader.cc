#include "json_reader.hh"

#include <cstdint>
#include <string>

#include "bht/errors.hh"

namespace bht::detail {

namespace {

using nlohmann::ordered_json;

class Parser {
public:
    Parser(std::string_view text, JsonPositions& positions)
        : text_(text), positions_(positions) {}

    ordered_json parse() {
        skip_ws();
        ordered_json root = value("", 0);
        skip_ws();
        if (pos_ != text_.size()) fail("trailing content after document");
        return root;
    }

private:
    std::string_view text_;
    JsonPositions& positions_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    static constexpr int max_depth = 200;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(errc::parse_error, msg, line_, col_);
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (!eof()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
                advance();
            else
                break;
        }
    }

    void expect(char c) {
        if (eof() || peek() != c)
            fail(std::string("expected '") + c + "'" +
                 (eof() ? " but reached end of input" : std::string(" but found '") + peek() + "'"));
        advance();
    }

    bool consume_literal(const char* lit) {
        std::size_t n = 0;
        while (lit[n]) ++n;
        if (text_.substr(pos_, n) != lit) return false;
        for (std::size_t i = 0; i < n; ++i) advance();
        return true;
    }

    ordered_json value(const std::string& path, int depth) {
        if (depth > max_depth) fail("nesting too deep");
        if (eof()) fail("unexpected end of input");
        positions_.at[path] = {line_, col_};
        const char c = peek();
        switch (c) {
            case '{': return object(path, depth);
            case '[': return array(path, depth);
            case '"': return ordered_json(string_token());
            case 't':
                if (consume_literal("true")) return ordered_json(true);
                fail("invalid literal");
            case 'f':
                if (consume_literal("false")) return ordered_json(false);
                fail("invalid literal");
            case 'n':
                if (consume_literal("null")) return ordered_json(nullptr);
                fail("invalid literal");
            default: return number();
        }
    }

    ordered_json object(const std::string& path, int depth) {
        expect('{');
        ordered_json out = ordered_json::object();
        skip_ws();
        if (!eof() && peek() == '}') {
            advance();
            return out;
        }
        for (;;) {
            skip_ws();
            if (eof() || peek() != '"') fail("expected object key string");
            const int kl = line_, kc = col_;
            const std::string key = string_token();
            if (out.contains(key)) {
                line_ = kl;
                col_ = kc;
                fail("duplicate key \"" + key + "\"");
            }
            skip_ws();
            expect(':');
            skip_ws();
            out[key] = value(path + "/" + escape_pointer(key), depth + 1);
            skip_ws();
            if (eof()) fail("unterminated object");
            if (peek() == ',') {
                advance();
                continue;
            }
            expect('}');
            return out;
        }
    }

    ordered_json array(const std::string& path, int depth) {
        expect('[');
        ordered_json out = ordered_json::array();
        skip_ws();
        if (!eof() && peek() == ']') {
            advance();
            return out;
        }
        for (std::size_t i = 0;; ++i) {
            skip_ws();
            out.push_back(value(path + "/" + std::to_string(i), depth + 1));
            skip_ws();
            if (eof()) fail("unterminated array");
            if (peek() == ',') {
                advance();
                continue;
            }
            expect(']');
            return out;
        }
    }

    static std::string escape_pointer(const std::string& key) {
        std::string out;
        for (char c : key) {
            if (c == '~')
                out += "~0";
            else if (c == '/')
                out += "~1";
            else
                out += c;
        }
        return out;
    }

    unsigned hex4() {
        unsigned v = 0;
        for (int i = 0; i < 4; ++i) {
            if (eof()) fail("truncated \\u escape");
            const char c = advance();
            v <<= 4;
            if (c >= '0' && c <= '9')
                v |= static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f')
                v |= static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                v |= static_cast<unsigned>(c - 'A' + 10);
            else
                fail("invalid \\u escape digit");
        }
        return v;
    }

    void append_utf8(std::string& out, unsigned cp) {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    std::string string_token() {
        expect('"');
        std::string out;
        for (;;) {
            if (eof()) fail("unterminated string");
            const char c = advance();
            if (c == '"') return out;
            if (static_cast<unsigned char>(c) < 0x20) fail("raw control character in string");
            if (c != '\\') {
                out += c;
                continue;
            }
            if (eof()) fail("truncated escape");
            const char e = advance();
            switch (e) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case '/': out += '/'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case 'u': {
                    unsigned cp = hex4();
                    if (cp >= 0xD800 && cp <= 0xDBFF) {
                        if (eof() || advance() != '\\' || eof() || advance() != 'u')
                            fail("unpaired surrogate");
                        const unsigned lo = hex4();
                        if (lo < 0xDC00 || lo > 0xDFFF) fail("invalid low surrogate");
                        cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
                    } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
                        fail("unpaired surrogate");
                    }
                    append_utf8(out, cp);
                    break;
                }
                default: fail("invalid escape character");
            }
        }
    }

    ordered_json number() {
        const std::size_t start = pos_;
        if (!eof() && peek() == '-') advance();
        if (eof() || !isdigit_at()) fail("invalid number");
        if (peek() == '0') {
            advance();
        } else {
            while (!eof() && isdigit_at()) advance();
        }
        bool integral = true;
        if (!eof() && peek() == '.') {
            integral = false;
            advance();
            if (eof() || !isdigit_at()) fail("invalid number fraction");
            while (!eof() && isdigit_at()) advance();
        }
        if (!eof() && (peek() == 'e' || peek() == 'E')) {
            integral = false;
            advance();
            if (!eof() && (peek() == '+' || peek() == '-')) advance();
            if (eof() || !isdigit_at()) fail("invalid number exponent");
            while (!eof() && isdigit_at()) advance();
        }
        const std::string token(text_.substr(start, pos_ - start));
        if (integral) {
            try {
                return ordered_json(static_cast<std::int64_t>(std::stoll(token)));
            } catch (const std::exception&) {
                fail("integer out of range");
            }
        }
        try {
            return ordered_json(std::stod(token));
        } catch (const std::exception&) {
            fail("number out of range");
        }
    }

    bool isdigit_at() const { return peek() >= '0' && peek() <= '9'; }
};

} // namespace

nlohmann::ordered_json parse_json(std::string_view text, JsonPositions& positions) {
    return Parser(text, positions).parse();
}

} // namespace bht::detail
