#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qck/qcalc.hpp"

#include <cmath>

using namespace qck;

TEST_CASE("integrand expressions")
{
    const auto f = Integrand::parse("1/(x+c)");
    CHECK(f(1.0, 1.0) == doctest::Approx(0.5));
    CHECK(Integrand::parse("-x*x + 3/2")(2.0, 0.0) == doctest::Approx(-2.5));
    CHECK(Integrand::parse("0")(5.0, 1.0) == 0.0);
    CHECK_THROWS_AS(Integrand::parse("1/(x-c)")(1.0, 1.0), PoleError);
    CHECK_THROWS(Integrand::parse("1/(x+"));
    CHECK_THROWS(Integrand::parse("y"));
}

TEST_CASE("partition data and validation")
{
    QIntegralSpec lower{IntegralKind::lower, 2.0, 0.5, 4};
    CHECK(lower.node(2) == doctest::Approx(0.5));
    CHECK(lower.weight(0) == doctest::Approx(1.0));
    QIntegralSpec upper{IntegralKind::upper, 2.0, 0.5, 4};
    CHECK(upper.node(2) == doctest::Approx(8.0));
    CHECK(upper.weight(1) == doctest::Approx(4.0));
    CHECK_THROWS(QIntegralSpec{IntegralKind::lower, 1.0, 1.0, 4}.validate());
    CHECK_THROWS(QIntegralSpec{IntegralKind::lower, -1.0, 0.5, 4}.validate());
    CHECK_THROWS(QIntegralSpec{IntegralKind::lower, 1.0, 0.5, 0}.validate());
}

TEST_CASE("Jackson sums against closed forms")
{
    const auto f = Integrand::parse("1/(x+1)");
    CHECK(std::abs(jackson_integral({IntegralKind::lower, 1.0, 0.999, 100000}, f) - std::log(2.0)) < 1e-2);
    CHECK(jackson_integral({IntegralKind::lower, 1.0, 0.9, 50}, Integrand::parse("0")) == 0.0);

    // x^n integrates exactly: sum (1-q) q^k (c q^k)^n c -> c^{n+1} (1-q)/(1-q^{n+1})
    const double q = 0.7, c = 1.5;
    const double exact = std::pow(c, 3) * (1 - q) / (1 - q * q * q);
    CHECK(jackson_integral({IntegralKind::lower, c, q, 400}, [](double x) { return x * x; }) ==
          doctest::Approx(exact).epsilon(1e-12));

    // monotone convergence of the lower sum
    const double a = jackson_integral({IntegralKind::lower, 1.0, 0.9, 200}, f);
    const double b = jackson_integral({IntegralKind::lower, 1.0, 0.9, 400}, f);
    CHECK(b >= a);
    CHECK(b - a < 1e-6);

    // q -> 1 approaches ln((c + c)/c) for 1/(x+c)
    double prev = 1.0;
    for (double qq : {0.9, 0.99, 0.999}) {
        const double err = std::abs(jackson_integral({IntegralKind::lower, 2.0, qq, 200000}, Integrand::parse("1/(x+c)")) -
                                    std::log(2.0));
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("upper sum grows linearly with slope 1/q - 1")
{
    const double q = 0.95;
    const auto f = Integrand::parse("1/(x+1)");
    std::vector<double> ks, vs;
    for (int K = 200; K <= 300; K += 10) {
        ks.push_back(K);
        vs.push_back(jackson_integral({IntegralKind::upper, 1.0, q, K}, f));
    }
    const auto fit = fit_line(ks, vs);
    CHECK(std::abs(fit.slope / (1 / q - 1) - 1) < 1e-2);
    CHECK(fit.residual < 1e-4);
}

TEST_CASE("line fit")
{
    const auto fit = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.residual == doctest::Approx(0.0));
}

TEST_CASE("UV/IR exchange")
{
    const auto f = Integrand::parse("1/(x+c)");
    for (auto [c, q, K] : {std::tuple{1.0, 0.9, 100}, std::tuple{0.3, 0.5, 17}, std::tuple{2.5, 0.99, 1}}) {
        const auto r = uvir_exchange_check(f, c, q, K);
        CHECK(r.point_bijection);
        CHECK(r.mirrored_lower == doctest::Approx(-r.upper).epsilon(1e-12));
        CHECK(std::abs(r.inversion_residual) < 1e-9 * std::max(1.0, std::abs(r.upper)));
        CHECK(r.scaling == doctest::Approx(-1 / q));
    }
    // Term by term, with L = lower and U = upper sums of 1/(x+c):
    //   U = q^{-1} (K (1-q) - L), so U + L/q = K (1-q)/q.
    const double q = 0.9;
    const int K = 100;
    const auto r = uvir_exchange_check(f, 1.0, q, K);
    CHECK(std::abs(r.constant_term - K * (1 - q) / q) < 1e-9);
    CHECK(std::abs(r.upper - (K * (1 - q) - r.lower) / q) < 1e-9);

    const auto one = uvir_exchange_check(f, 1.0, q, 1);
    CHECK(one.ratio == doctest::Approx(1 / q));
}

TEST_CASE("tree integrands")
{
    CHECK(tree_to_integrand(RootedTree::parse("[]")).text == "1/(x1+c)");
    CHECK(tree_to_integrand(RootedTree::parse("[[]]")).text == "1/((x1+c)*(x1+x2))");
    const auto cherry = tree_to_integrand(RootedTree::parse("[[][]]"));
    CHECK(cherry.text == "1/((x1+c)*(x1+x2)*(x1+x3))");
    CHECK(cherry.parent == std::vector<int>{-1, 0, 0});
    CHECK(cherry.depth == std::vector<int>{0, 1, 1});
}

TEST_CASE("tree integral values")
{
    const double q = 0.95;
    const auto single = evaluate_tree_integral(RootedTree::parse("[]"), 1.0, q, 300, false);
    CHECK(std::abs(single.fit.slope / (1 / q - 1) - 1) < 0.1);
    CHECK(single.value == doctest::Approx(jackson_integral({IntegralKind::upper, 1.0, q, 300}, Integrand::parse("1/(x+c)"))));

    // fixed physical cutoff Lambda = c q^{-K} as q -> 1
    const double c = 1.0, lambda = 100.0;
    for (double qq : {0.999, 0.9995}) {
        const int K = static_cast<int>(std::lround(std::log(lambda / c) / -std::log(qq)));
        const double cutoff = c * std::pow(qq, -K);
        const double v = tree_integral_value(RootedTree::parse("[]"), c, qq, K, false);
        CHECK(std::abs(v / std::log((cutoff + c) / (2 * c)) - 1) < 0.05);
    }

    double prev = 0.0;
    for (int K = 10; K <= 60; K += 10) {
        const double v = tree_integral_value(RootedTree::parse("[[]]"), 1.0, 0.9, K, false);
        CHECK(std::isfinite(v));
        CHECK(v > prev);
        prev = v;
    }
    CHECK(std::isfinite(tree_integral_value(RootedTree::parse("[[][]]"), 1.0, 0.9, 40, true)));
}

TEST_CASE("nested sum matches a direct double sum")
{
    // [[]]: sum_i w_i/(x_i+c) sum_j w_j/(x_i+x_j) over the upper partition
    const double c = 1.0, q = 0.8;
    const int K = 25;
    QIntegralSpec s{IntegralKind::upper, c, q, K};
    double direct = 0.0;
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
            direct += s.weight(i) * s.weight(j) / ((s.node(i) + c) * (s.node(i) + s.node(j)));
    CHECK(tree_integral_value(RootedTree::parse("[[]]"), c, q, K, false) == doctest::Approx(direct).epsilon(1e-12));

    // alternating: the child at depth 1 uses the lower sum in 1/x
    QIntegralSpec l{IntegralKind::lower, c, q, K};
    double alt = 0.0;
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
            alt += s.weight(i) * l.weight(j) / ((s.node(i) + c) * (s.node(i) + 1 / l.node(j)));
    CHECK(tree_integral_value(RootedTree::parse("[[]]"), c, q, K, true) == doctest::Approx(alt).epsilon(1e-12));
}

TEST_CASE("integral word exchange")
{
    CHECK(integral_word_exchange(1, 2) == 1);
    CHECK(integral_word_exchange(3, 1) == -2);
    for (int n = 1; n <= 6; ++n)
        for (int m = 1; m <= 6; ++m) {
            CHECK(integral_word_exchange(n, m) == m - n);
            CHECK(integral_word_exchange(n, m) == -integral_word_exchange(m, n));
        }
    CHECK_THROWS(integral_word_exchange(0, 1));
}

TEST_CASE("Manin plane operators")
{
    const auto ops = manin_operators(3, 1);
    CHECK(ops.x.at(0, 0) == Laurent(1));
    CHECK(ops.x.at(2, 2) == Laurent::q_pow(2));
    CHECK(ops.y.at(1, 0) == Laurent(1));
    CHECK(ops.y.at(2, 1) == Laurent(1));
    CHECK(ops.y.column_is_zero(2));
    CHECK(ops.delta.at(1, 0) == Laurent::q_pow(1));
    CHECK(ops.delta.at(2, 1) == Laurent::q_pow(2));
    CHECK(ops.delta.column_is_zero(2));
    CHECK_THROWS(manin_operators(3, 3));

    // y x = q^{-1} x y away from the truncated last column
    const auto big = manin_operators(8, 1);
    const auto diff = big.y * big.x - Laurent::q_pow(-1) * (big.x * big.y);
    for (int j = 0; j + 1 < 8; ++j)
        CHECK(diff.column_is_zero(j));
}

TEST_CASE("delta relation")
{
    const auto r = delta_relation_check(1, 2, 16);
    CHECK(r.holds);
    CHECK(r.first_column == 0);
    CHECK(r.last_column == 12);
    CHECK(delta_relation_check(2, 3, 16).last_column == 10);
    CHECK(delta_relation_check(3, 3, 16).holds);
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m)
            CHECK(delta_relation_check(n, m, 16).holds);
    CHECK_THROWS_AS(delta_relation_check(8, 8, 16), std::invalid_argument);
}
