/**
 * @file laurent.hpp
 * @brief Exact Laurent polynomials in q over the rationals.
 */

#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

namespace qck {

using Rational = mpq_class;

class Laurent {
public:
    using Terms = std::map<int, Rational>;

    Laurent() = default;
    Laurent(long value);
    Laurent(const Rational& value);

    /// r * q^k
    static Laurent monomial(const Rational& r, int k);
    /// q^k
    static Laurent q_pow(int k) { return monomial(Rational(1), k); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    /// Single term r*q^k.
    bool is_monomial() const { return terms_.size() == 1; }
    int max_exponent() const { return terms_.rbegin()->first; }
    int min_exponent() const { return terms_.begin()->first; }
    Rational coefficient(int k) const;

    Laurent& operator+=(const Laurent& b);
    Laurent& operator-=(const Laurent& b);
    Laurent& operator*=(const Laurent& b);
    Laurent operator-() const;

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

    /// Multiplies by q^k.
    Laurent shifted(int k) const;

    /// Text form, decreasing exponents, e.g. "q^2-3*q^-1", "3/2*q", "0".
    std::string str() const;
    static Laurent parse(std::string_view text);

private:
    void add_term(int k, const Rational& r);

    Terms terms_;
};

/// Substitutes q -> 1/q.
Laurent q_invert(const Laurent& a);

/// Exact evaluation at a nonzero rational.
Rational evaluate(const Laurent& a, const Rational& at);
/// Floating evaluation at a nonzero double.
double evaluate(const Laurent& a, double at);

std::string format_rational(const Rational& r);

} // namespace qck
