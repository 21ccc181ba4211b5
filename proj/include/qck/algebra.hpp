/**
 * @file algebra.hpp
 * @brief Normal forms and products in the two-sector q-deformed tree algebra.
 *
 * A basis monomial is a sector tag, a sorted word of trees and a power of the
 * deformed unit e, read as t1 t2 ... tn e^k. In the plain sector trees obey
 *
 *     t1 t2 = q^{v(t2)-v(t1)} t2 t1,      e t = q^{v(t)} t e,
 *
 * and the hat sector is the same algebra with q replaced by 1/q. A plain
 * factor meeting a hat factor is converted to the hat sector:
 *
 *     m * n^ = q^{-v(m)} m^ n^,           n^ * m = q^{v(m)} n^ m^.
 *
 * The empty monomial is an adjoined unit distinct from e; e^{-1} e collapses
 * to it in either sector. The mixed product is a well-defined binary
 * operation on normal forms but is not associative across sectors; see
 * associativity_probe.
 */

#pragma once

#include "qck/laurent.hpp"
#include "qck/trees.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qck {

enum class Sector { plain, hat };

struct Monomial {
    Sector sector = Sector::plain;
    std::vector<RootedTree> trees; // sorted under tree_order
    int e_power = 0;

    static Monomial unit() { return {}; }
    static Monomial tree(const RootedTree& t, Sector s = Sector::plain) { return {s, {t}, 0}; }
    static Monomial e(int k, Sector s = Sector::plain);
    /// Sorted forest with coefficient one.
    static Monomial forest(const Forest& f, Sector s = Sector::plain) { return {s, f.trees(), 0}; }

    bool is_unit() const { return trees.empty() && e_power == 0; }
    bool has_trees() const { return !trees.empty(); }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Tree-vertex sum; e-powers contribute zero.
int vertex_count(const Monomial& m);

/// Sign applied to every q-exponent in a sector: +1 plain, -1 hat.
constexpr int sector_sign(Sector s) { return s == Sector::plain ? 1 : -1; }

/// Finite linear combination of basis monomials with Laurent coefficients.
class Element {
public:
    using Terms = std::map<Monomial, Laurent>;

    Element() = default;
    Element(const Monomial& m, Laurent c = Laurent(1));
    static Element unit() { return Element(Monomial::unit()); }
    static Element tree(const RootedTree& t, Sector s = Sector::plain) { return Element(Monomial::tree(t, s)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Monomial& m, const Laurent& c);

    Element& operator+=(const Element& b);
    Element& operator-=(const Element& b);
    Element operator-() const;
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Laurent& c, const Element& a);
    friend Element operator*(const Element& a, const Element& b);
    friend bool operator==(const Element&, const Element&) = default;

private:
    Terms terms_;
};

/// A word letter: a tree or a power of e.
struct EPower {
    int k = 1;
};
using Generator = std::variant<RootedTree, EPower>;

/// Reorders a word into normal form inside one sector.
Element normalize_word(Sector sector, std::span<const Generator> word);

/// Product of two basis monomials: result = q^exponent * monomial.
struct MonomialProduct {
    int exponent;
    Monomial monomial;
};
MonomialProduct multiply(const Monomial& a, const Monomial& b);

Element multiply(const Element& a, const Element& b);

/// How plain elements are carried to the hat sector.
enum class HatConvention {
    twist,    ///< coefficients go through q -> 1/q (algebra isomorphism)
    preserve, ///< coefficients unchanged
};

/// Maps a plain element to the hat sector; rejects hat input.
Element hat_twist(const Element& a, HatConvention convention = HatConvention::twist);
/// Inverse of hat_twist; rejects plain non-unit input.
Element unhat_twist(const Element& a, HatConvention convention = HatConvention::twist);

/// Element with every coefficient evaluated at a rational q (kept as constants).
Element specialize(const Element& a, const Rational& q);

// ---------------------------------------------------------------------------
// Tensor powers

template <std::size_t N>
class TensorPower {
public:
    using Key = std::array<Monomial, N>;
    using Terms = std::map<Key, Laurent>;

    TensorPower() = default;
    TensorPower(const Key& k, Laurent c = Laurent(1)) { add(k, c); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Key& k, const Laurent& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    TensorPower& operator+=(const TensorPower& b)
    {
        for (const auto& [k, c] : b.terms_)
            add(k, c);
        return *this;
    }
    TensorPower& operator-=(const TensorPower& b)
    {
        for (const auto& [k, c] : b.terms_)
            add(k, -c);
        return *this;
    }
    friend TensorPower operator+(TensorPower a, const TensorPower& b) { return a += b; }
    friend TensorPower operator-(TensorPower a, const TensorPower& b) { return a -= b; }
    friend TensorPower operator*(const Laurent& c, const TensorPower& a)
    {
        TensorPower out;
        for (const auto& [k, d] : a.terms_)
            out.add(k, c * d);
        return out;
    }
    friend bool operator==(const TensorPower&, const TensorPower&) = default;

private:
    Terms terms_;
};

using TensorElement = TensorPower<2>;
using TripleTensor = TensorPower<3>;

/// Slotwise product (m1 (x) m2)(n1 (x) n2) = m1 n1 (x) m2 n2.
template <std::size_t N>
TensorPower<N> tensor_multiply(const TensorPower<N>& a, const TensorPower<N>& b)
{
    TensorPower<N> out;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            typename TensorPower<N>::Key key;
            int exponent = 0;
            for (std::size_t i = 0; i < N; ++i) {
                auto p = multiply(ka[i], kb[i]);
                exponent += p.exponent;
                key[i] = std::move(p.monomial);
            }
            out.add(key, (ca * cb).shifted(exponent));
        }
    }
    return out;
}

/// Sum of c * m1 * m2 over the terms of a tensor, each product taken left to right.
Element contract(const TensorElement& a);

// ---------------------------------------------------------------------------
// Classical quotient: q = 1, e = 1, sectors merged.

/// Commutative polynomial in trees: sorted forest -> rational coefficient.
using ClassicalPolynomial = std::map<std::vector<RootedTree>, Rational>;

ClassicalPolynomial classical_project(const Element& a);

// ---------------------------------------------------------------------------

struct AssociativityReport {
    struct Bucket {
        int samples = 0;
        int equal = 0;
        /// exponent k -> count, where (ab)c = q^k a(bc) and k != 0
        std::map<int, int> discrepancy_exponents;
        /// triples whose bracketings land on different basis monomials (an
        /// e^{-1} e collapse to the unit on one side drops the hat sector)
        int unmatched = 0;
    };
    Bucket plain, hat, mixed;
};

/// Random monomial triples with up to v_max tree vertices per factor.
AssociativityReport associativity_probe(int v_max, int samples, std::uint64_t seed);

/// The k with (ab)c = q^k a(bc), or nullopt when the two bracketings reach
/// different basis monomials.
std::optional<int> bracketing_exponent(const Monomial& a, const Monomial& b, const Monomial& c);

} // namespace qck
