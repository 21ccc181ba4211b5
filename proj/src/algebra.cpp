#include "qck/algebra.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace qck {

namespace {

// The adjoined unit is stored in the plain sector regardless of origin.
Monomial& settle(Monomial& m)
{
    if (m.is_unit())
        m.sector = Sector::plain;
    return m;
}

int forest_vertices(const std::vector<RootedTree>& trees)
{
    int v = 0;
    for (const auto& t : trees)
        v += t.vertices();
    return v;
}

} // namespace

Monomial Monomial::e(int k, Sector s)
{
    Monomial m{s, {}, k};
    return settle(m);
}

int vertex_count(const Monomial& m) { return forest_vertices(m.trees); }

Element::Element(const Monomial& m, Laurent c)
{
    Monomial key = m;
    add(settle(key), c);
}

void Element::add(const Monomial& m, const Laurent& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& b)
{
    for (const auto& [m, c] : b.terms_)
        add(m, c);
    return *this;
}

Element& Element::operator-=(const Element& b)
{
    for (const auto& [m, c] : b.terms_)
        add(m, -c);
    return *this;
}

Element Element::operator-() const
{
    Element out;
    for (const auto& [m, c] : terms_)
        out.terms_.emplace(m, -c);
    return out;
}

Element operator*(const Laurent& c, const Element& a)
{
    Element out;
    for (const auto& [m, d] : a.terms_)
        out.add(m, c * d);
    return out;
}

Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

Element normalize_word(Sector sector, std::span<const Generator> word)
{
    const int sign = sector_sign(sector);
    int exponent = 0;
    int e_power = 0;
    std::vector<RootedTree> trees;
    for (const auto& g : word) {
        if (const auto* ep = std::get_if<EPower>(&g)) {
            e_power += ep->k;
            continue;
        }
        const auto& t = std::get<RootedTree>(g);
        // e^{k} t = q^{k v(t)} t e^{k}
        exponent += sign * e_power * t.vertices();
        // x t = q^{v(t)-v(x)} t x for every earlier x that sorts after t
        for (const auto& x : trees)
            if (t < x)
                exponent += sign * (t.vertices() - x.vertices());
        trees.push_back(t);
    }
    std::sort(trees.begin(), trees.end());
    return Element(Monomial{sector, std::move(trees), e_power}, Laurent::q_pow(exponent));
}

MonomialProduct multiply(const Monomial& a, const Monomial& b)
{
    int exponent = 0;
    Sector sector = Sector::plain;
    if (a.sector == Sector::plain && b.sector == Sector::hat) {
        exponent -= vertex_count(a);
        sector = Sector::hat;
    } else if (a.sector == Sector::hat && b.sector == Sector::plain) {
        exponent += vertex_count(b);
        sector = Sector::hat;
    } else {
        sector = a.sector;
    }
    const int sign = sector_sign(sector);

    exponent += sign * a.e_power * forest_vertices(b.trees);
    for (const auto& y : b.trees)
        for (const auto& x : a.trees)
            if (y < x)
                exponent += sign * (y.vertices() - x.vertices());

    Monomial out{sector, {}, a.e_power + b.e_power};
    out.trees.reserve(a.trees.size() + b.trees.size());
    std::merge(a.trees.begin(), a.trees.end(), b.trees.begin(), b.trees.end(), std::back_inserter(out.trees));
    settle(out);
    return {exponent, std::move(out)};
}

Element multiply(const Element& a, const Element& b)
{
    Element out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            auto p = multiply(ma, mb);
            out.add(p.monomial, (ca * cb).shifted(p.exponent));
        }
    }
    return out;
}

Element hat_twist(const Element& a, HatConvention convention)
{
    Element out;
    for (const auto& [m, c] : a.terms()) {
        if (m.sector == Sector::hat)
            throw std::invalid_argument("hat_twist: input contains hat monomials");
        Monomial h = m;
        if (!h.is_unit())
            h.sector = Sector::hat;
        out.add(h, convention == HatConvention::twist ? q_invert(c) : c);
    }
    return out;
}

Element unhat_twist(const Element& a, HatConvention convention)
{
    Element out;
    for (const auto& [m, c] : a.terms()) {
        if (m.sector == Sector::plain && !m.is_unit())
            throw std::invalid_argument("unhat_twist: input contains plain monomials");
        Monomial p = m;
        p.sector = Sector::plain;
        out.add(p, convention == HatConvention::twist ? q_invert(c) : c);
    }
    return out;
}

Element specialize(const Element& a, const Rational& q)
{
    Element out;
    for (const auto& [m, c] : a.terms())
        out.add(m, Laurent(evaluate(c, q)));
    return out;
}

Element contract(const TensorElement& a)
{
    Element out;
    for (const auto& [k, c] : a.terms()) {
        auto p = multiply(k[0], k[1]);
        out.add(p.monomial, c.shifted(p.exponent));
    }
    return out;
}

ClassicalPolynomial classical_project(const Element& a)
{
    ClassicalPolynomial out;
    for (const auto& [m, c] : a.terms()) {
        Rational r = evaluate(c, Rational(1));
        if (r == 0)
            continue;
        auto [it, inserted] = out.try_emplace(m.trees, r);
        if (!inserted) {
            it->second += r;
            if (it->second == 0)
                out.erase(it);
        }
    }
    return out;
}

std::optional<int> bracketing_exponent(const Monomial& a, const Monomial& b, const Monomial& c)
{
    auto ab = multiply(a, b);
    auto ab_c = multiply(ab.monomial, c);
    auto bc = multiply(b, c);
    auto a_bc = multiply(a, bc.monomial);
    if (ab_c.monomial != a_bc.monomial)
        return std::nullopt;
    return (ab.exponent + ab_c.exponent) - (bc.exponent + a_bc.exponent);
}

AssociativityReport associativity_probe(int v_max, int samples, std::uint64_t seed)
{
    if (v_max < 1 || v_max > 4)
        throw std::invalid_argument("associativity_probe: v_max must be in 1..4");
    std::vector<RootedTree> pool;
    for (int n = 1; n <= v_max; ++n)
        for (auto& t : enumerate_trees(n))
            pool.push_back(std::move(t));

    std::mt19937_64 rng(seed);
    auto draw = [&](Sector s) {
        Monomial m{s, {}, static_cast<int>(rng() % 3) - 1};
        int budget = static_cast<int>(rng() % (v_max + 1));
        while (budget > 0) {
            std::vector<const RootedTree*> fits;
            for (const auto& t : pool)
                if (t.vertices() <= budget)
                    fits.push_back(&t);
            const RootedTree& t = *fits[rng() % fits.size()];
            m.trees.push_back(t);
            budget -= t.vertices();
        }
        std::sort(m.trees.begin(), m.trees.end());
        return settle(m);
    };
    auto record = [](AssociativityReport::Bucket& bucket, const Monomial& a, const Monomial& b, const Monomial& c) {
        ++bucket.samples;
        auto k = bracketing_exponent(a, b, c);
        if (!k)
            ++bucket.unmatched;
        else if (*k == 0)
            ++bucket.equal;
        else
            ++bucket.discrepancy_exponents[*k];
    };

    AssociativityReport report;
    for (int i = 0; i < samples; ++i) {
        record(report.plain, draw(Sector::plain), draw(Sector::plain), draw(Sector::plain));
        record(report.hat, draw(Sector::hat), draw(Sector::hat), draw(Sector::hat));
        std::array<Sector, 3> s;
        do {
            for (auto& x : s)
                x = rng() % 2 ? Sector::hat : Sector::plain;
        } while (s[0] == s[1] && s[1] == s[2]);
        record(report.mixed, draw(s[0]), draw(s[1]), draw(s[2]));
    }
    return report;
}

} // namespace qck
