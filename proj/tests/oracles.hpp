// Independent reference implementations used by the unit and acceptance tests.
// None of these go through the library's cut enumeration, normal forms or
// antipode recursion; they work on flat parent arrays and commutative
// polynomials instead.
#pragma once

#include "qck/algebra.hpp"
#include "qck/trees.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using qck::RootedTree;

/// Preorder parent array: parent[0] = -1, parent[v] < v otherwise.
inline void flatten(const RootedTree& t, int p, std::vector<int>& parent)
{
    const int me = static_cast<int>(parent.size());
    parent.push_back(p);
    for (const auto& c : t.children())
        flatten(c, me, parent);
}

inline std::vector<int> parent_array(const RootedTree& t)
{
    std::vector<int> parent;
    flatten(t, -1, parent);
    return parent;
}

/// Component hanging from `root` once the edges above every vertex in `cut`
/// are removed; `cut[v]` marks the edge (parent[v], v).
inline qck::RawTree component(const std::vector<int>& parent, const std::vector<bool>& cut, int root)
{
    qck::RawTree raw;
    for (int v = root + 1; v < static_cast<int>(parent.size()); ++v)
        if (parent[v] == root && !cut[v])
            raw.children.push_back(component(parent, cut, v));
    return raw;
}

inline bool has_cut_ancestor(const std::vector<int>& parent, const std::vector<bool>& cut, int v)
{
    for (int a = parent[v]; a > 0; a = parent[a])
        if (cut[a])
            return true;
    return false;
}

/// (sorted pruned encodings, trunk encoding)
using CutRecord = std::pair<std::vector<std::string>, std::string>;

/// Every nonempty edge subset meeting each root-to-leaf path at most once,
/// found by scanning all 2^(n-1) subsets.
inline std::vector<CutRecord> brute_force_cuts(const RootedTree& t)
{
    const auto parent = parent_array(t);
    const int n = static_cast<int>(parent.size());
    std::vector<CutRecord> out;
    for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
        std::vector<bool> cut(n, false);
        for (int v = 1; v < n; ++v)
            cut[v] = (mask >> (v - 1)) & 1u;
        bool admissible = true;
        for (int v = 1; v < n && admissible; ++v)
            if (cut[v] && has_cut_ancestor(parent, cut, v))
                admissible = false;
        if (!admissible)
            continue;
        CutRecord rec;
        for (int v = 1; v < n; ++v)
            if (cut[v])
                rec.first.push_back(qck::canonicalize(component(parent, cut, v)).encoding());
        std::sort(rec.first.begin(), rec.first.end());
        rec.second = qck::canonicalize(component(parent, cut, 0)).encoding();
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Number of unlabeled rooted trees with 1..n_max vertices via Otter's
/// recurrence a(n+1) = (1/n) sum_k (sum_{d|k} d a(d)) a(n-k+1).
inline std::vector<long long> otter_counts(int n_max)
{
    std::vector<long long> a(n_max + 1, 0);
    a[1] = 1;
    for (int n = 1; n < n_max; ++n) {
        long long s = 0;
        for (int k = 1; k <= n; ++k) {
            long long inner = 0;
            for (int d = 1; d <= k; ++d)
                if (k % d == 0)
                    inner += d * a[d];
            s += inner * a[n - k + 1];
        }
        a[n + 1] = s / n;
    }
    return a;
}

// ---------------------------------------------------------------------------
// Commutative forest polynomials (the undeformed tree algebra).

using Poly = qck::ClassicalPolynomial;

inline void poly_add(Poly& a, const std::vector<RootedTree>& forest, const qck::Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = a.try_emplace(forest, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            a.erase(it);
    }
}

inline Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly out;
    for (const auto& [fa, ca] : a)
        for (const auto& [fb, cb] : b) {
            std::vector<RootedTree> f = fa;
            f.insert(f.end(), fb.begin(), fb.end());
            std::sort(f.begin(), f.end());
            poly_add(out, f, ca * cb);
        }
    return out;
}

inline Poly poly_sum(Poly a, const Poly& b, const qck::Rational& scale = 1)
{
    for (const auto& [f, c] : b)
        poly_add(a, f, scale * c);
    return a;
}

inline Poly poly_of(std::vector<RootedTree> forest, const qck::Rational& c = 1)
{
    std::sort(forest.begin(), forest.end());
    Poly p;
    poly_add(p, forest, c);
    return p;
}

/// Undeformed antipode by the non-recursive forest formula
/// S(t) = sum over all edge subsets C of (-1)^{|C|+1} times the product of the
/// connected pieces left after deleting C.
inline Poly forest_formula_antipode(const RootedTree& t)
{
    const auto parent = parent_array(t);
    const int n = static_cast<int>(parent.size());
    Poly out;
    for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<bool> cut(n, false);
        int size = 0;
        for (int v = 1; v < n; ++v) {
            cut[v] = (mask >> (v - 1)) & 1u;
            size += cut[v];
        }
        std::vector<RootedTree> pieces{qck::canonicalize(component(parent, cut, 0))};
        for (int v = 1; v < n; ++v)
            if (cut[v])
                pieces.push_back(qck::canonicalize(component(parent, cut, v)));
        std::sort(pieces.begin(), pieces.end());
        poly_add(out, pieces, size % 2 == 0 ? -1 : 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random data.

inline std::vector<RootedTree> tree_pool(int v_max)
{
    std::vector<RootedTree> pool;
    for (int n = 1; n <= v_max; ++n)
        for (auto& t : qck::enumerate_trees(n))
            pool.push_back(std::move(t));
    return pool;
}

inline qck::Monomial random_monomial(std::mt19937_64& rng, const std::vector<RootedTree>& pool, int v_max,
                                     qck::Sector sector, int e_range = 2)
{
    qck::Monomial m{sector, {}, static_cast<int>(rng() % (2 * e_range + 1)) - e_range};
    int budget = static_cast<int>(rng() % (v_max + 1));
    while (budget > 0) {
        std::vector<const RootedTree*> fits;
        for (const auto& t : pool)
            if (t.vertices() <= budget)
                fits.push_back(&t);
        const auto& t = *fits[rng() % fits.size()];
        m.trees.push_back(t);
        budget -= t.vertices();
    }
    std::sort(m.trees.begin(), m.trees.end());
    if (m.is_unit())
        m.sector = qck::Sector::plain;
    return m;
}

inline qck::Laurent random_laurent(std::mt19937_64& rng)
{
    qck::Laurent c;
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < terms; ++i) {
        const long num = static_cast<long>(rng() % 13) - 6;
        const long den = 1 + static_cast<long>(rng() % 4);
        qck::Rational r{mpz_class(num), mpz_class(den)};
        r.canonicalize();
        c += qck::Laurent::monomial(r, static_cast<int>(rng() % 7) - 3);
    }
    return c;
}

inline qck::Element random_element(std::mt19937_64& rng, const std::vector<RootedTree>& pool, int v_max,
                                   int max_terms = 4)
{
    qck::Element a;
    const int terms = static_cast<int>(rng() % (max_terms + 1));
    for (int i = 0; i < terms; ++i) {
        const auto sector = rng() % 2 ? qck::Sector::hat : qck::Sector::plain;
        a.add(random_monomial(rng, pool, v_max, sector), random_laurent(rng));
    }
    return a;
}

} // namespace oracle
