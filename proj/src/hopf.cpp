#include "qck/hopf.hpp"

#include "qck/textio.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace qck {

namespace {

TensorElement tree_coproduct(const RootedTree& t, Sector s)
{
    TensorElement out;
    out.add({Monomial::e(1, s), Monomial::tree(t, s)}, Laurent(1));
    out.add({Monomial::tree(t, s), Monomial::e(1, s)}, Laurent(1));
    for (const auto& cut : admissible_cuts(t))
        out.add({Monomial::forest(cut.pruned, s), Monomial::tree(cut.trunk, s)}, Laurent(1));
    return out;
}

Element e_inverse(Sector s) { return Element(Monomial::e(-1, s)); }

} // namespace

TensorElement coproduct(const Monomial& m)
{
    TensorElement out({Monomial::unit(), Monomial::unit()});
    for (const auto& t : m.trees)
        out = tensor_multiply(out, tree_coproduct(t, m.sector));
    if (m.e_power != 0) {
        Monomial e = Monomial::e(m.e_power, m.sector);
        out = tensor_multiply(out, TensorElement({e, e}));
    }
    return out;
}

TensorElement coproduct(const Element& a)
{
    TensorElement out;
    for (const auto& [m, c] : a.terms())
        out += c * coproduct(m);
    return out;
}

Laurent counit(const Monomial& m) { return m.has_trees() ? Laurent() : Laurent(1); }

Laurent counit(const Element& a)
{
    Laurent out;
    for (const auto& [m, c] : a.terms())
        out += c * counit(m);
    return out;
}

Element counit_left(const TensorElement& a)
{
    Element out;
    for (const auto& [k, c] : a.terms())
        out.add(k[1], c * counit(k[0]));
    return out;
}

Element counit_right(const TensorElement& a)
{
    Element out;
    for (const auto& [k, c] : a.terms())
        out.add(k[0], c * counit(k[1]));
    return out;
}

namespace {

struct AntipodeCache {
    std::shared_mutex mutex;
    std::unordered_map<std::string, Element> values;
};

AntipodeCache& antipode_cache()
{
    static AntipodeCache cache;
    return cache;
}

Element compute_tree_antipode(const RootedTree& t)
{
    Element out = -Element::tree(t);
    const Element e_inv = e_inverse(Sector::plain);
    for (const auto& cut : admissible_cuts(t)) {
        Element term = antipode_classical(Monomial::forest(cut.pruned));
        term = term * e_inv;
        term = term * Element::tree(cut.trunk);
        out -= term;
    }
    return out;
}

} // namespace

const Element& antipode_classical(const RootedTree& t)
{
    auto& cache = antipode_cache();
    {
        std::shared_lock lock(cache.mutex);
        if (auto it = cache.values.find(t.encoding()); it != cache.values.end())
            return it->second;
    }
    // Computed outside the lock: the recursion re-enters the cache for subtrees.
    Element value = compute_tree_antipode(t);
    std::unique_lock lock(cache.mutex);
    // unordered_map references stay valid across rehashing.
    return cache.values.try_emplace(t.encoding(), std::move(value)).first->second;
}

Element antipode_classical(const Monomial& m)
{
    if (m.sector != Sector::plain)
        throw std::invalid_argument("antipode_classical: monomial is not in the plain sector");
    // S(t1 ... tn e^k) = S(e)^k S(tn) ... S(t1), with S(e^{+-1}) = e^{+-1}.
    Element out(Monomial::e(m.e_power));
    for (auto it = m.trees.rbegin(); it != m.trees.rend(); ++it)
        out = out * antipode_classical(*it);
    return out;
}

Element antipode_classical(const Element& a)
{
    Element out;
    for (const auto& [m, c] : a.terms())
        out += c * antipode_classical(m);
    return out;
}

Element s_q(const Monomial& m, HatConvention convention)
{
    if (m.sector == Sector::plain)
        return hat_twist(antipode_classical(m), convention);
    Monomial plain = m;
    plain.sector = Sector::plain;
    return antipode_classical(plain);
}

Element s_q(const Element& a, HatConvention convention)
{
    Element out;
    for (const auto& [m, c] : a.terms())
        out += c * s_q(m, convention);
    return out;
}

ResidualReport left_antipode_residual(const Monomial& m, HatConvention convention)
{
    Element sum;
    const TensorElement d = coproduct(m);
    for (const auto& [k, c] : d.terms())
        sum += c * (s_q(k[0], convention) * Element(k[1]));
    sum -= counit(m) * Element::unit();
    ResidualReport r{print_monomial(m), sum, sum.is_zero()};
    return r;
}

ResidualReport right_antipode_residual(const Monomial& m)
{
    Element sum;
    const TensorElement d = coproduct(m);
    for (const auto& [k, c] : d.terms())
        sum += c * (Element(k[0]) * s_q(k[1]));
    sum -= counit(m) * Element::unit();
    ResidualReport r{print_monomial(m), sum, sum.is_zero()};
    return r;
}

Element right_defect_closed_form(const RootedTree& t)
{
    Element out;
    for (const auto& cut : admissible_cuts(t)) {
        Element p_hat(Monomial::forest(cut.pruned, Sector::hat));
        Element r_hat(Monomial::tree(cut.trunk, Sector::hat));
        Element diff = p_hat * s_q(Monomial::tree(cut.trunk)) - s_q(Monomial::forest(cut.pruned)) * r_hat;
        out += Laurent::q_pow(-cut.pruned.vertices()) * diff;
    }
    return out;
}

ResidualReport lemma1_residual(const RootedTree& t1, const RootedTree& t2)
{
    TensorElement d1 = coproduct(Monomial::tree(t1));
    TensorElement d2 = coproduct(Monomial::tree(t2));
    TensorElement r = tensor_multiply(d1, d2) -
                      Laurent::q_pow(t2.vertices() - t1.vertices()) * tensor_multiply(d2, d1);
    bool vanished = r.is_zero();
    return {t1.encoding() + "," + t2.encoding(), std::move(r), vanished};
}

TripleTensor coproduct_left_leg(const TensorElement& a)
{
    TripleTensor out;
    for (const auto& [k, c] : a.terms()) {
        const TensorElement split = coproduct(k[0]);
        for (const auto& [inner, d] : split.terms())
            out.add({inner[0], inner[1], k[1]}, c * d);
    }
    return out;
}

TripleTensor coproduct_right_leg(const TensorElement& a)
{
    TripleTensor out;
    for (const auto& [k, c] : a.terms()) {
        const TensorElement split = coproduct(k[1]);
        for (const auto& [inner, d] : split.terms())
            out.add({k[0], inner[0], inner[1]}, c * d);
    }
    return out;
}

ResidualReport coassociativity_residual(const Element& a, const std::string& subject)
{
    TensorElement d = coproduct(a);
    TripleTensor r = coproduct_left_leg(d) - coproduct_right_leg(d);
    bool vanished = r.is_zero();
    return {subject, std::move(r), vanished};
}

std::vector<RootedTree> trees_up_to(int v_max)
{
    std::vector<RootedTree> out;
    for (int n = 1; n <= v_max; ++n)
        for (auto& t : enumerate_trees(n))
            out.push_back(std::move(t));
    return out;
}

std::vector<Monomial> monomials_up_to(int v_max, Sector sector, const std::vector<int>& e_powers)
{
    const auto pool = trees_up_to(v_max);
    std::vector<std::vector<RootedTree>> forests{{}};
    // Non-decreasing words over the pool are exactly the sorted forests.
    for (std::size_t i = 0; i < forests.size(); ++i) {
        const auto current = forests[i];
        int used = 0;
        for (const auto& t : current)
            used += t.vertices();
        for (const auto& t : pool) {
            if (!current.empty() && t < current.back())
                continue;
            if (used + t.vertices() > v_max)
                continue;
            auto next = current;
            next.push_back(t);
            forests.push_back(std::move(next));
        }
    }
    std::vector<Monomial> out;
    for (const auto& f : forests)
        for (int k : e_powers) {
            Monomial m{sector, f, k};
            if (m.is_unit())
                m.sector = Sector::plain;
            if (std::find(out.begin(), out.end(), m) == out.end())
                out.push_back(std::move(m));
        }
    return out;
}

std::vector<QMinusOneRow> q_minus1_probe(int v_max)
{
    if (v_max < 1 || v_max > 4)
        throw std::invalid_argument("q_minus1_probe: v_max must be in 1..4");
    std::vector<QMinusOneRow> rows;
    for (const auto& t : trees_up_to(v_max)) {
        Element left, right;
        const TensorElement d = coproduct(Monomial::tree(t));
        for (const auto& [k, c] : d.terms()) {
            left += c * (antipode_classical(k[0]) * Element(k[1]));
            right += c * (Element(k[0]) * antipode_classical(k[1]));
        }
        // eps(t) = 0, so both identities ask for zero.
        rows.push_back({t, specialize(left, Rational(-1)).is_zero(), specialize(right, Rational(-1)).is_zero(),
                        classical_project(left).empty(), classical_project(right).empty()});
    }
    return rows;
}

} // namespace qck
