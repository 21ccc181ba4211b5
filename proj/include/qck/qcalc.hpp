/**
 * @file qcalc.hpp
 * @brief Jackson q-integrals, the tree toy integrals, and the Manin-plane
 *        operator representation.
 *
 * Truncated Jackson sums over a geometric partition with K nodes:
 *
 *     lower (0..c):    sum_{k<K} (x_k - x_{k+1}) f(x_k),   x_k = c q^k
 *     upper (c..inf):  sum_{k<K} (x_{k+1} - x_k) f(x_k),   x_k = c q^{-k}
 *
 * with 0 < q < 1, summed in ascending k. The upper cutoff c q^{-K} plays the
 * role of a UV regulator, so divergent integrands show up as growth in K.
 */

#pragma once

#include "qck/laurent.hpp"
#include "qck/trees.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qck {

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rational expression in x and c: rational constants, + - * /, parentheses.
class Integrand {
public:
    static Integrand parse(std::string_view text);

    /// Throws PoleError on division by zero.
    double operator()(double x, double c) const;
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

enum class IntegralKind { lower, upper };

struct QIntegralSpec {
    IntegralKind kind = IntegralKind::lower;
    double c = 1.0;
    double q = 0.5;
    int K = 1;

    void validate() const;
    /// Node x_k of the partition.
    double node(int k) const;
    /// Weight multiplying f(x_k).
    double weight(int k) const;
};

double jackson_integral(const QIntegralSpec& spec, const std::function<double(double)>& f);
double jackson_integral(const QIntegralSpec& spec, const Integrand& f);

struct UvIrReport {
    /// Upper nodes c q^{-k} coincide index by index with the lower nodes at 1/q.
    bool point_bijection = false;
    double upper = 0.0;          ///< upper sum at q
    double lower = 0.0;          ///< lower sum at q
    double mirrored_lower = 0.0; ///< lower-type sum taken at 1/q; equals -upper
    /// upper - q^{-1} * lower sum of g(y) = c^2 f(c^2/y) / y^2 (x -> c^2/x)
    double inversion_residual = 0.0;
    double scaling = 0.0;       ///< -1/q
    double constant_term = 0.0; ///< upper - scaling * lower
    double ratio = 0.0;         ///< upper / lower
};

UvIrReport uvir_exchange_check(const Integrand& f, double c, double q, int K);

/// Toy integrand of a tree: 1/(x_root + c) * prod_{v != root} 1/(x_parent(v) + x_v).
struct TreeIntegrand {
    std::vector<int> parent; ///< preorder vertex index of the parent, -1 at the root
    std::vector<int> depth;
    std::string text;        ///< e.g. "1/((x1+c)*(x1+x2))"
};

TreeIntegrand tree_to_integrand(const RootedTree& t);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; ///< root mean square
};

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

struct TreeIntegralResult {
    double value = 0.0;
    std::vector<int> window_K;
    std::vector<double> window_values;
    LinearFit fit;
};

/// Nested q-integrals, children first. With `alternate`, vertices at odd depth
/// use the lower integral in the inverted variable 1/x; all others the upper.
double tree_integral_value(const RootedTree& t, double c, double q, int K, bool alternate);
TreeIntegralResult evaluate_tree_integral(const RootedTree& t, double c, double q, int K, bool alternate);

/// p with (dy dx_1..dx_{n-1})(dy dx_1..dx_{m-1}) = q^p (dy dx_1..dx_{m-1})(dy dx_1..dx_{n-1}).
int integral_word_exchange(int n, int m);

/// N x N matrix with exact Laurent entries; column j is the image of |j>.
class TruncatedOperator {
public:
    explicit TruncatedOperator(int n = 0) : n_(n), entries_(static_cast<std::size_t>(n) * n) {}

    int dimension() const { return n_; }
    const Laurent& at(int row, int col) const { return entries_[index(row, col)]; }
    Laurent& at(int row, int col) { return entries_[index(row, col)]; }

    friend TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b);
    friend TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b);
    friend TruncatedOperator operator*(const Laurent& s, const TruncatedOperator& a);
    friend bool operator==(const TruncatedOperator&, const TruncatedOperator&) = default;

    bool column_is_zero(int col) const;

private:
    std::size_t index(int row, int col) const;

    int n_;
    std::vector<Laurent> entries_;
};

struct ManinOperators {
    TruncatedOperator x;     ///< x|k> = q^k |k>
    TruncatedOperator y;     ///< y|k> = |k+1>, truncated
    TruncatedOperator delta; ///< x y^n
};

ManinOperators manin_operators(int N, int n);

struct DeltaRelationReport {
    int n = 0;
    int m = 0;
    int N = 0;
    int first_column = 0;
    int last_column = 0; ///< columns j with j + n + m < N
    bool holds = false;
};

/// delta_n delta_m - q^{m-n} delta_m delta_n on the truncation-safe columns.
DeltaRelationReport delta_relation_check(int n, int m, int N);

} // namespace qck
