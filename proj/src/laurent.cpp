#include "qck/laurent.hpp"

#include "qck/errors.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qck {

Laurent::Laurent(long value) { add_term(0, Rational(value)); }

Laurent::Laurent(const Rational& value) { add_term(0, value); }

Laurent Laurent::monomial(const Rational& r, int k)
{
    Laurent a;
    a.add_term(k, r);
    return a;
}

bool Laurent::is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1; }

Rational Laurent::coefficient(int k) const
{
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Laurent::add_term(int k, const Rational& r)
{
    if (r == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(k, r);
    if (!inserted) {
        it->second += r;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Laurent& Laurent::operator+=(const Laurent& b)
{
    for (const auto& [k, r] : b.terms_)
        add_term(k, r);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& b)
{
    for (const auto& [k, r] : b.terms_)
        add_term(k, -r);
    return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b)
{
    Laurent out;
    for (const auto& [ka, ra] : a.terms_)
        for (const auto& [kb, rb] : b.terms_)
            out.add_term(ka + kb, ra * rb);
    return out;
}

Laurent& Laurent::operator*=(const Laurent& b) { return *this = *this * b; }

Laurent Laurent::operator-() const
{
    Laurent out;
    for (const auto& [k, r] : terms_)
        out.terms_.emplace(k, -r);
    return out;
}

Laurent Laurent::shifted(int k) const
{
    Laurent out;
    for (const auto& [e, r] : terms_)
        out.terms_.emplace(e + k, r);
    return out;
}

Laurent q_invert(const Laurent& a)
{
    Laurent out;
    for (const auto& [k, r] : a.terms())
        out += Laurent::monomial(r, -k);
    return out;
}

Rational evaluate(const Laurent& a, const Rational& at)
{
    if (at == 0)
        throw std::domain_error("evaluate: q = 0 is not allowed for a Laurent polynomial");
    Rational sum = 0;
    for (const auto& [k, r] : a.terms()) {
        Rational p = 1;
        Rational base = k >= 0 ? at : Rational(1) / at;
        for (int i = 0; i < std::abs(k); ++i)
            p *= base;
        sum += r * p;
    }
    return sum;
}

double evaluate(const Laurent& a, double at)
{
    if (at == 0.0)
        throw std::domain_error("evaluate: q = 0 is not allowed for a Laurent polynomial");
    double sum = 0.0;
    for (const auto& [k, r] : a.terms())
        sum += r.get_d() * std::pow(at, k);
    return sum;
}

std::string format_rational(const Rational& r)
{
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string Laurent::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, r] = *it;
        Rational mag = abs(r);
        std::string body;
        if (k == 0) {
            body = format_rational(mag);
        } else {
            std::string qpart = k == 1 ? "q" : "q^" + std::to_string(k);
            body = mag == 1 ? qpart : format_rational(mag) + "*" + qpart;
        }
        if (r < 0)
            out += "-";
        else if (!first)
            out += "+";
        out += body;
        first = false;
    }
    return out;
}

namespace {

class LaurentReader {
public:
    explicit LaurentReader(std::string_view text) : text_(text) {}

    Laurent read_all()
    {
        Laurent sum;
        skip_ws();
        bool first = true;
        while (pos_ < text_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw ParseError("expected '+' or '-' in coefficient", span1());
            }
            Laurent t = read_term();
            sum += sign < 0 ? -t : t;
            first = false;
            skip_ws();
        }
        if (first)
            throw ParseError("empty coefficient", {pos_, pos_});
        return sum;
    }

private:
    Laurent read_term()
    {
        if (peek() == 'q')
            return Laurent::q_pow(read_qpow());
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("malformed coefficient", span1());
        Rational r = read_rational();
        skip_ws();
        if (peek() == '*') {
            ++pos_;
            skip_ws();
            if (peek() != 'q')
                throw ParseError("expected 'q' after '*' in coefficient", span1());
            return Laurent::monomial(r, read_qpow());
        }
        return Laurent(r);
    }

    int read_qpow()
    {
        ++pos_; // 'q'
        skip_ws();
        if (peek() != '^')
            return 1;
        ++pos_;
        skip_ws();
        return read_int();
    }

    int read_int()
    {
        std::size_t start = pos_;
        if (peek() == '-' || peek() == '+')
            ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == digits)
            throw ParseError("expected integer exponent", {start, std::min(pos_ + 1, text_.size())});
        try {
            return std::stoi(std::string(text_.substr(start, pos_ - start)));
        } catch (const std::out_of_range&) {
            throw ParseError("exponent out of range", {start, pos_});
        }
    }

    Rational read_rational()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        mpz_class num(std::string(text_.substr(start, pos_ - start)));
        mpz_class den = 1;
        if (peek() == '/') {
            ++pos_;
            std::size_t ds = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == ds)
                throw ParseError("malformed rational", {start, std::min(pos_ + 1, text_.size())});
            den = mpz_class(std::string(text_.substr(ds, pos_ - ds)));
            if (den == 0)
                throw ParseError("zero denominator", {start, pos_});
        }
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    SourceSpan span1() const { return {pos_, std::min(pos_ + 1, text_.size())}; }
    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Laurent Laurent::parse(std::string_view text) { return LaurentReader(text).read_all(); }

} // namespace qck
