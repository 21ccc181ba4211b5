/**
 * @file hopf.hpp
 * @brief Coproduct, counit, antipodes and the identity checks built on them.
 *
 * On a tree the coproduct is the admissible-cut sum
 *
 *     D(t) = e (x) t + t (x) e + sum_C P^C(t) (x) R^C(t),
 *
 * mirrored with every factor hatted in the hat sector, with D(e^k) = e^k (x) e^k
 * and D(1) = 1 (x) 1. It is extended to monomials multiplicatively
 * (left-associated) and to elements linearly.
 *
 * The antipode S of the plain sector follows the recursion
 *
 *     S(t) = -t - sum_C S(P^C(t)) e^{-1} R^C(t),
 *
 * extended antihomomorphically. S_q swaps the sectors: S_q(m) = hat(S(m)) and
 * S_q(m^) = S(m).
 */

#pragma once

#include "qck/algebra.hpp"

#include <string>
#include <variant>
#include <vector>

namespace qck {

TensorElement coproduct(const Monomial& m);
TensorElement coproduct(const Element& a);

/// One on monomials without trees (any sector or e-power), zero otherwise.
Laurent counit(const Monomial& m);
Laurent counit(const Element& a);

/// (eps (x) id) and (id (x) eps) applied to a tensor.
Element counit_left(const TensorElement& a);
Element counit_right(const TensorElement& a);

/// S on a plain tree, memoized by canonical encoding.
const Element& antipode_classical(const RootedTree& t);
/// S on a plain monomial; rejects hat monomials.
Element antipode_classical(const Monomial& m);
Element antipode_classical(const Element& a);

Element s_q(const Monomial& m, HatConvention convention = HatConvention::twist);
Element s_q(const Element& a, HatConvention convention = HatConvention::twist);

struct ResidualReport {
    std::string subject;
    std::variant<Element, TensorElement, TripleTensor> residual;
    bool vanished = false;
};

/// m((S_q (x) id) D(m)) - eps(m) 1
ResidualReport left_antipode_residual(const Monomial& m, HatConvention convention = HatConvention::twist);
/// m((id (x) S_q) D(m)) - eps(m) 1
ResidualReport right_antipode_residual(const Monomial& m);
/// sum_C q^{-v(P)} (P^ S_q(R) - S_q(P) R^), evaluated from the cuts of t.
Element right_defect_closed_form(const RootedTree& t);

/// D(t1) D(t2) - q^{v(t2)-v(t1)} D(t2) D(t1)
ResidualReport lemma1_residual(const RootedTree& t1, const RootedTree& t2);

TripleTensor coproduct_left_leg(const TensorElement& a);  ///< (D (x) id)
TripleTensor coproduct_right_leg(const TensorElement& a); ///< (id (x) D)
/// (D (x) id) D(a) - (id (x) D) D(a)
ResidualReport coassociativity_residual(const Element& a, const std::string& subject);

struct QMinusOneRow {
    RootedTree tree;
    bool left_at_minus_one;  ///< m(S (x) id)D(t) = 0 at q = -1, e kept
    bool right_at_minus_one; ///< m(id (x) S)D(t) = 0 at q = -1, e kept
    bool left_classical;     ///< same identities at q = 1 with e = 1
    bool right_classical;
};

/// Every tree with up to v_max <= 4 vertices; informational.
std::vector<QMinusOneRow> q_minus1_probe(int v_max);

/// All canonical trees with 1..v_max vertices.
std::vector<RootedTree> trees_up_to(int v_max);

/// Basis monomials of one sector whose forests have at most v_max vertices,
/// once per listed e-power; the empty forest is included.
std::vector<Monomial> monomials_up_to(int v_max, Sector sector, const std::vector<int>& e_powers);

} // namespace qck
