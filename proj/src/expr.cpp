#include "singkam/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "singkam/series_text.hpp"

namespace singkam {

namespace {

class Parser {
public:
    Parser(const std::string& text, const ExprContext& ctx) : s_(text), ctx_(ctx) {
        ctx_.params.validate();
    }

    TruncatedSeries run() {
        TruncatedSeries r = parseExpr();
        skipWs();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("parsePoly: " + msg, pos_); }

    void skipWs() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }

    bool eat(char c) {
        skipWs();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skipWs();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    TruncatedSeries parseExpr() {
        bool neg = false;
        skipWs();
        if (eat('+')) {
        } else if (eat('-'))
            neg = true;
        TruncatedSeries acc = parseTerm();
        if (neg) acc = acc.negated();
        while (true) {
            skipWs();
            if (eat('+'))
                acc = add(acc, parseTerm());
            else if (eat('-'))
                acc = sub(acc, parseTerm());
            else
                break;
        }
        return acc;
    }

    TruncatedSeries parseTerm() {
        TruncatedSeries acc = parseFactor();
        while (eat('*')) acc = mul(acc, parseFactor());
        return acc;
    }

    TruncatedSeries parseFactor() {
        TruncatedSeries base = parseBase();
        if (eat('^')) {
            skipWs();
            std::size_t at = pos_;
            long e = parseNat();
            if (e > 255) throw ParseError("parsePoly: exponent too large", at);
            if (base.size() == 1) {
                // single monomial: power it directly so cap overflow is an error,
                // not a silent truncation
                const auto& t = base.terms().front();
                MultiIndex mi(ctx_.params.n);
                for (int b = 0; b < 4; ++b)
                    for (int i = 0; i < ctx_.params.n; ++i) {
                        long ee = long(t.mi.exp(static_cast<Var>(b), i)) * e;
                        if (ee > 255) throw ParseError("parsePoly: exponent overflow", at);
                        mi.setExp(static_cast<Var>(b), i, int(ee));
                    }
                if (mi.weightedDegree() > ctx_.params.degCap || mi.tDegree() > ctx_.params.tCap)
                    throw ParseError("parsePoly: monomial exceeds the configured caps", at);
                Complex c = 1.0;
                for (long i = 0; i < e; ++i) c *= t.c;
                return TruncatedSeries::monomial(ctx_.params, mi, c);
            }
            TruncatedSeries r = TruncatedSeries::constant(ctx_.params, 1.0);
            for (long i = 0; i < e; ++i) r = mul(r, base);
            return r;
        }
        return base;
    }

    long parseNat() {
        skipWs();
        if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_])) fail("expected an integer");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000) fail("integer too large");
            ++pos_;
        }
        return v;
    }

    double parseNumber() {
        skipWs();
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number");
        pos_ += std::size_t(end - begin);
        return v;
    }

    bool looksLikeComplexLiteral() {
        // '(' number ('+'|'-') number 'i' ')'
        std::size_t save = pos_;
        bool ok = false;
        if (eat('(')) {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            std::strtod(begin, &end);
            if (end != begin) {
                std::size_t p = pos_ + std::size_t(end - begin);
                while (p < s_.size() && std::isspace((unsigned char)s_[p])) ++p;
                if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) {
                    const char* b2 = s_.c_str() + p;
                    char* e2 = nullptr;
                    std::strtod(b2, &e2);
                    if (e2 != b2) {
                        std::size_t p2 = p + std::size_t(e2 - b2);
                        if (p2 < s_.size() && s_[p2] == 'i') ok = true;
                    }
                }
            }
        }
        pos_ = save;
        return ok;
    }

    TruncatedSeries parseBase() {
        skipWs();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            if (looksLikeComplexLiteral()) {
                eat('(');
                double re = parseNumber();
                skipWs();
                double im = parseNumber(); // sign is part of the number
                skipWs();
                if (pos_ >= s_.size() || s_[pos_] != 'i') fail("expected 'i' in complex literal");
                ++pos_;
                if (!eat(')')) fail("expected ')' after complex literal");
                return TruncatedSeries::constant(ctx_.params, Complex(re, im));
            }
            eat('(');
            TruncatedSeries inner = parseExpr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit((unsigned char)c) || c == '.') {
            return TruncatedSeries::constant(ctx_.params, parseNumber());
        }
        if (std::isalpha((unsigned char)c)) return parseVariable();
        fail(std::string("unexpected character '") + c + "'");
    }

    TruncatedSeries parseVariable() {
        std::size_t at = pos_;
        std::string name;
        while (pos_ < s_.size() && std::isalpha((unsigned char)s_[pos_])) name += s_[pos_++];
        if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_]))
            throw ParseError("parsePoly: variable '" + name + "' needs an index", at);
        long idx = parseNat();
        if (idx < 1 || idx > ctx_.params.n)
            throw ParseError("parsePoly: index out of range for n = " + std::to_string(ctx_.params.n),
                             at);
        int i = int(idx) - 1;
        if (name == "q") return TruncatedSeries::variable(ctx_.params, Var::Q, i);
        if (name == "p") return TruncatedSeries::variable(ctx_.params, Var::P, i);
        if (name == "l") return TruncatedSeries::variable(ctx_.params, Var::L, i);
        if (name == "t") return TruncatedSeries::variable(ctx_.params, Var::T, i);
        if (name == "alpha") {
            if ((int)ctx_.alpha.size() < ctx_.params.n)
                throw ParseError("parsePoly: alpha values not configured", at);
            return TruncatedSeries::constant(ctx_.params, ctx_.alpha[i]);
        }
        throw ParseError("parsePoly: unknown variable '" + name + "'", at);
    }

    const std::string& s_;
    ExprContext ctx_;
    std::size_t pos_ = 0;
};

} // namespace

TruncatedSeries parsePoly(const std::string& text, const ExprContext& ctx) {
    return Parser(text, ctx).run();
}

std::string printPoly(const TruncatedSeries& f) {
    if (f.isZero()) return "0";
    std::ostringstream os;
    const int n = f.dim();
    bool first = true;
    static const char* blockName[4] = {"t", "l", "q", "p"};
    for (const auto& t : f.terms()) {
        if (!first) os << " + ";
        first = false;
        if (t.c.imag() == 0.0)
            os << formatDouble(t.c.real());
        else
            os << '(' << formatDouble(t.c.real()) << (t.c.imag() > 0.0 ? "+" : "")
               << formatDouble(t.c.imag()) << "i)";
        for (int b = 0; b < 4; ++b)
            for (int i = 0; i < n; ++i) {
                int e = t.mi.exp(static_cast<Var>(b), i);
                if (!e) continue;
                os << '*' << blockName[b] << (i + 1);
                if (e > 1) os << '^' << e;
            }
    }
    return os.str();
}

} // namespace singkam
