#include "secrate/sysio.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <vector>

namespace secrate {

using boost::multiprecision::cpp_int;

namespace {

struct Token {
    enum class Kind { number, ident, plus, minus, star, le, ge, end };
    Kind kind = Kind::end;
    Rational value;
    std::string text;
};

// cpp_int's string constructor follows C++ literal rules, so a leading zero
// would switch it to octal; strip the redundant zeros first.
cpp_int decimal_int(const std::string& digits) {
    std::size_t first = digits.find_first_not_of('0');
    if (first == std::string::npos) return cpp_int(0);
    return cpp_int(digits.substr(first));
}

// Exact conversion of an integer, decimal, or n/d literal.
Rational parse_number(const std::string& s, int line) {
    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty() ||
            num.find_first_not_of("0123456789") != std::string::npos ||
            den.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("malformed rational literal '" + s + "'", line);
        cpp_int n = decimal_int(num), d = decimal_int(den);
        if (d == 0) throw ParseError("zero denominator in '" + s + "'", line);
        return Rational(n, d);
    }
    // Decimal: mantissa digits over a power of ten, exponent shifts it.
    std::size_t epos = s.find_first_of("eE");
    std::string mantissa = epos == std::string::npos ? s : s.substr(0, epos);
    long long exp10 = 0;
    if (epos != std::string::npos) {
        try {
            exp10 = std::stoll(s.substr(epos + 1));
        } catch (const std::exception&) {
            throw ParseError("malformed exponent in '" + s + "'", line);
        }
    }
    std::size_t dot = mantissa.find('.');
    std::string digits = mantissa;
    if (dot != std::string::npos) {
        digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        exp10 -= static_cast<long long>(mantissa.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("malformed number '" + s + "'", line);
    Rational r{decimal_int(digits)};
    for (long long i = 0; i < exp10; ++i) r *= 10;
    for (long long i = 0; i > exp10; --i) r /= 10;
    return r;
}

std::vector<Token> tokenize(const std::string& text, int line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            t.kind = Token::Kind::ident;
            t.text = text.substr(i, j - i);
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            bool saw_slash = false;
            while (j < text.size()) {
                char d = text[j];
                if (std::isdigit(static_cast<unsigned char>(d)) || d == '.') {
                    ++j;
                } else if ((d == 'e' || d == 'E') && !saw_slash) {
                    ++j;
                    if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
                } else if (d == '/' && !saw_slash && j + 1 < text.size() &&
                           std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                    saw_slash = true;
                    ++j;
                } else {
                    break;
                }
            }
            t.kind = Token::Kind::number;
            t.value = parse_number(text.substr(i, j - i), line);
            i = j;
        } else if (c == '+') {
            t.kind = Token::Kind::plus;
            ++i;
        } else if (c == '-') {
            t.kind = Token::Kind::minus;
            ++i;
        } else if (c == '*') {
            t.kind = Token::Kind::star;
            ++i;
        } else if (c == '<' && i + 1 < text.size() && text[i + 1] == '=') {
            t.kind = Token::Kind::le;
            i += 2;
        } else if (c == '>' && i + 1 < text.size() && text[i + 1] == '=') {
            t.kind = Token::Kind::ge;
            i += 2;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line);
        }
        out.push_back(std::move(t));
    }
    out.push_back(Token{});
    return out;
}

struct Side {
    std::map<std::string, Rational> coeffs;
    Rational constant;
};

// side := [sign] term { (+|-) term },  term := number [* ident] | ident
Side parse_side(const std::vector<Token>& toks, std::size_t& pos, int line) {
    Side side;
    bool expect_term = true;
    Rational sign = 1;
    while (true) {
        const Token& t = toks[pos];
        if (expect_term) {
            if (t.kind == Token::Kind::minus) {
                sign = -sign;
                ++pos;
                continue;
            }
            if (t.kind == Token::Kind::plus) {
                ++pos;
                continue;
            }
            if (t.kind == Token::Kind::number) {
                Rational coeff = sign * t.value;
                ++pos;
                if (toks[pos].kind == Token::Kind::star) {
                    ++pos;
                    if (toks[pos].kind != Token::Kind::ident)
                        throw ParseError("expected variable name after '*'", line);
                    side.coeffs[toks[pos].text] += coeff;
                    ++pos;
                } else {
                    side.constant += coeff;
                }
            } else if (t.kind == Token::Kind::ident) {
                side.coeffs[t.text] += sign;
                ++pos;
            } else {
                throw ParseError("expected a term", line);
            }
            expect_term = false;
            sign = 1;
        } else {
            if (t.kind == Token::Kind::plus || t.kind == Token::Kind::minus) {
                sign = (t.kind == Token::Kind::minus) ? Rational(-1) : Rational(1);
                ++pos;
                expect_term = true;
            } else {
                return side;
            }
        }
    }
}

std::string strip_comment(const std::string& line) {
    std::size_t h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::string format_coeff(const Rational& c) {
    return c.str();
}

} // namespace

HalfSpaceSystem parse_system(std::istream& in) {
    struct ParsedRow {
        std::map<std::string, Rational> coeffs;
        Rational rhs;
    };
    std::vector<ParsedRow> rows;
    std::vector<std::string> var_order;
    std::map<std::string, bool> var_seen;
    bool nonneg = true;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        if (is_blank(line)) continue;

        std::istringstream directive(line);
        std::string word1, word2, extra;
        directive >> word1 >> word2 >> extra;
        if (word1 == "nonneg" && extra.empty()) {
            if (word2 == "on")
                nonneg = true;
            else if (word2 == "off")
                nonneg = false;
            else
                throw ParseError("nonneg directive expects 'on' or 'off'", lineno);
            continue;
        }

        std::vector<Token> toks = tokenize(line, lineno);
        std::size_t pos = 0;
        Side lhs = parse_side(toks, pos, lineno);
        Token::Kind op = toks[pos].kind;
        if (op != Token::Kind::le && op != Token::Kind::ge)
            throw ParseError("expected '<=' or '>='", lineno);
        ++pos;
        Side rhs = parse_side(toks, pos, lineno);
        if (toks[pos].kind != Token::Kind::end)
            throw ParseError("trailing input after inequality", lineno);

        // Normalize to  (lhs - rhs vars) <= (rhs - lhs constants); >= negates.
        ParsedRow row;
        for (const auto& [name, c] : lhs.coeffs) row.coeffs[name] += c;
        for (const auto& [name, c] : rhs.coeffs) row.coeffs[name] -= c;
        row.rhs = rhs.constant - lhs.constant;
        if (op == Token::Kind::ge) {
            for (auto& [name, c] : row.coeffs) c = -c;
            row.rhs = -row.rhs;
        }
        for (const auto& [name, c] : row.coeffs) {
            (void)c;
            if (!var_seen[name]) {
                var_seen[name] = true;
                var_order.push_back(name);
            }
        }
        rows.push_back(std::move(row));
    }

    HalfSpaceSystem sys(var_order, nonneg);
    for (const auto& row : rows) {
        LinearInequality ineq;
        ineq.coeffs = row.coeffs;
        ineq.rhs = row.rhs;
        sys.add(ineq);
    }
    return sys;
}

HalfSpaceSystem parse_system_text(const std::string& text) {
    std::istringstream in(text);
    return parse_system(in);
}

HalfSpaceSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return parse_system(in);
}

std::string format_system(const HalfSpaceSystem& sys) {
    std::ostringstream out;
    if (!sys.implicit_nonneg()) out << "nonneg off\n";
    for (std::size_t i = 0; i < sys.row_count(); ++i) {
        const auto& r = sys.rows()[i];
        bool first = true;
        for (std::size_t k = 0; k < sys.variables().size(); ++k) {
            const Rational& c = r.coeffs[k];
            if (c == 0) continue;
            Rational mag = abs(c);
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            if (mag != 1) out << format_coeff(mag) << "*";
            out << sys.variables()[k];
        }
        if (first) out << "0";
        out << " <= " << format_coeff(r.rhs) << "\n";
    }
    return out.str();
}

void save_system(const std::string& path, const HalfSpaceSystem& sys) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << format_system(sys);
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace secrate
