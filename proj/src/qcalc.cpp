#include "qck/qcalc.hpp"

#include "qck/errors.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace qck {

// ---------------------------------------------------------------------------
// Integrand expressions

struct Integrand::Node {
    enum class Op { constant, x, c, neg, add, sub, mul, div };
    Op op = Op::constant;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Integrand::Node>;
using Op = Integrand::Node::Op;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0)
{
    auto n = std::make_shared<Integrand::Node>();
    n->op = op;
    n->value = value;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class ExprReader {
public:
    explicit ExprReader(std::string_view text) : text_(text) {}

    NodePtr read_all()
    {
        NodePtr e = expr();
        skip_ws();
        if (pos_ < text_.size())
            throw ParseError("unexpected token in integrand", span1());
        return e;
    }

private:
    NodePtr expr()
    {
        NodePtr lhs = term();
        for (;;) {
            skip_ws();
            char ch = peek();
            if (ch != '+' && ch != '-')
                return lhs;
            ++pos_;
            lhs = make(ch == '+' ? Op::add : Op::sub, lhs, term());
        }
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        for (;;) {
            skip_ws();
            char ch = peek();
            if (ch != '*' && ch != '/')
                return lhs;
            ++pos_;
            lhs = make(ch == '*' ? Op::mul : Op::div, lhs, unary());
        }
    }

    NodePtr unary()
    {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return make(Op::neg, unary());
        }
        if (peek() == '+') {
            ++pos_;
            return unary();
        }
        return primary();
    }

    NodePtr primary()
    {
        skip_ws();
        char ch = peek();
        if (ch == '(') {
            std::size_t open = pos_++;
            NodePtr e = expr();
            skip_ws();
            if (peek() != ')')
                throw ParseError("unbalanced parenthesis in integrand", {open, pos_});
            ++pos_;
            return e;
        }
        if (ch == 'x') {
            ++pos_;
            return make(Op::x);
        }
        if (ch == 'c') {
            ++pos_;
            return make(Op::c);
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                ++pos_;
            std::string lit(text_.substr(start, pos_ - start));
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(lit, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != lit.size())
                throw ParseError("malformed number in integrand", {start, pos_});
            return make(Op::constant, nullptr, nullptr, v);
        }
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of integrand", {pos_, pos_});
        throw ParseError("unknown token in integrand", span1());
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

double eval_node(const Integrand::Node& n, double x, double c)
{
    switch (n.op) {
    case Op::constant:
        return n.value;
    case Op::x:
        return x;
    case Op::c:
        return c;
    case Op::neg:
        return -eval_node(*n.lhs, x, c);
    case Op::add:
        return eval_node(*n.lhs, x, c) + eval_node(*n.rhs, x, c);
    case Op::sub:
        return eval_node(*n.lhs, x, c) - eval_node(*n.rhs, x, c);
    case Op::mul:
        return eval_node(*n.lhs, x, c) * eval_node(*n.rhs, x, c);
    case Op::div: {
        double den = eval_node(*n.rhs, x, c);
        if (den == 0.0)
            throw PoleError("integrand has a pole at x = " + std::to_string(x));
        return eval_node(*n.lhs, x, c) / den;
    }
    }
    return 0.0;
}

} // namespace

Integrand Integrand::parse(std::string_view text)
{
    Integrand f;
    f.root_ = ExprReader(text).read_all();
    f.text_ = std::string(text);
    return f;
}

double Integrand::operator()(double x, double c) const { return eval_node(*root_, x, c); }

// ---------------------------------------------------------------------------
// Jackson sums

void QIntegralSpec::validate() const
{
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("q-integral: q must lie in (0,1)");
    if (!(c > 0.0))
        throw std::invalid_argument("q-integral: c must be positive");
    if (K < 1)
        throw std::invalid_argument("q-integral: K must be at least 1");
}

double QIntegralSpec::node(int k) const
{
    return kind == IntegralKind::lower ? c * std::pow(q, k) : c * std::pow(q, -k);
}

double QIntegralSpec::weight(int k) const
{
    return kind == IntegralKind::lower ? node(k) - node(k + 1) : node(k + 1) - node(k);
}

double jackson_integral(const QIntegralSpec& spec, const std::function<double(double)>& f)
{
    spec.validate();
    double sum = 0.0;
    for (int k = 0; k < spec.K; ++k) {
        double x = spec.node(k);
        double fx = f(x);
        if (!std::isfinite(fx))
            throw PoleError(fmt::format("integrand is not finite at partition point x = {:g}", x));
        sum += spec.weight(k) * fx;
        if (!std::isfinite(sum))
            throw NumericError("q-integral accumulation overflowed at k = " + std::to_string(k));
    }
    return sum;
}

double jackson_integral(const QIntegralSpec& spec, const Integrand& f)
{
    return jackson_integral(spec, [&](double x) { return f(x, spec.c); });
}

namespace {

// Lower-type sum with an arbitrary positive ratio r (r = 1/q gives the mirrored nodes).
double lower_form_sum(const std::function<double(double)>& f, double c, double r, int K)
{
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
        double x = c * std::pow(r, k);
        double fx = f(x);
        if (!std::isfinite(fx))
            throw PoleError(fmt::format("integrand is not finite at partition point x = {:g}", x));
        sum += (x - c * std::pow(r, k + 1)) * fx;
    }
    if (!std::isfinite(sum))
        throw NumericError("mirrored sum overflowed");
    return sum;
}

} // namespace

UvIrReport uvir_exchange_check(const Integrand& f, double c, double q, int K)
{
    QIntegralSpec upper{IntegralKind::upper, c, q, K};
    QIntegralSpec lower{IntegralKind::lower, c, q, K};
    upper.validate();

    UvIrReport r;

    // Node k of the upper partition is c q^{-k}; node k of the lower partition
    // at parameter 1/q is c (1/q)^k. Compare as exact rationals.
    r.point_bijection = true;
    const Rational qr(q), cr(c);
    const Rational qinv = Rational(1) / qr;
    Rational up = cr, mirrored = cr;
    const int exact_checks = std::min(K, 64);
    for (int k = 0; k < exact_checks; ++k) {
        if (up != mirrored) {
            r.point_bijection = false;
            break;
        }
        up /= qr;
        mirrored *= qinv;
    }

    auto fx = [&](double x) { return f(x, c); };
    r.upper = jackson_integral(upper, fx);
    r.lower = jackson_integral(lower, fx);
    r.mirrored_lower = lower_form_sum(fx, c, 1.0 / q, K);

    // x -> c^2/x sends the upper nodes onto the lower ones with
    // (x_{k+1} - x_k) = q^{-1} (c^2/y_k^2) (y_k - y_{k+1}).
    auto g = [&](double y) { return c * c * f(c * c / y, c) / (y * y); };
    r.inversion_residual = r.upper - jackson_integral(lower, g) / q;

    r.scaling = -1.0 / q;
    r.constant_term = r.upper - r.scaling * r.lower;
    r.ratio = r.upper / r.lower;
    return r;
}

// ---------------------------------------------------------------------------
// Tree integrals

namespace {

struct Flattened {
    std::vector<int> parent;
    std::vector<int> depth;
};

void flatten(const RootedTree& t, int parent, int depth, Flattened& out)
{
    int self = static_cast<int>(out.parent.size());
    out.parent.push_back(parent);
    out.depth.push_back(depth);
    for (const auto& ch : t.children())
        flatten(ch, self, depth + 1, out);
}

} // namespace

TreeIntegrand tree_to_integrand(const RootedTree& t)
{
    Flattened f;
    flatten(t, -1, 0, f);
    TreeIntegrand out{f.parent, f.depth, {}};
    std::vector<std::string> factors{"(x1+c)"};
    for (std::size_t v = 1; v < f.parent.size(); ++v)
        factors.push_back("(x" + std::to_string(f.parent[v] + 1) + "+x" + std::to_string(v + 1) + ")");
    if (factors.size() == 1) {
        out.text = "1/(x1+c)";
    } else {
        out.text = "1/(";
        for (std::size_t i = 0; i < factors.size(); ++i)
            out.text += (i ? "*" : "") + factors[i];
        out.text += ")";
    }
    return out;
}

double tree_integral_value(const RootedTree& t, double c, double q, int K, bool alternate)
{
    QIntegralSpec base{IntegralKind::upper, c, q, K};
    base.validate();

    Flattened f;
    flatten(t, -1, 0, f);
    const std::size_t n = f.parent.size();

    // Effective coordinate and Jackson weight at each node, per vertex.
    std::vector<std::vector<double>> coord(n), weight(n);
    for (std::size_t v = 0; v < n; ++v) {
        bool inverted = alternate && f.depth[v] % 2 == 1;
        QIntegralSpec s{inverted ? IntegralKind::lower : IntegralKind::upper, c, q, K};
        coord[v].resize(K);
        weight[v].resize(K);
        for (int k = 0; k < K; ++k) {
            double x = s.node(k);
            coord[v][k] = inverted ? 1.0 / x : x;
            weight[v][k] = s.weight(k);
        }
    }

    // inner[v][k]: product of the child integrals with x_v at its k-th node.
    std::vector<std::vector<double>> inner(n, std::vector<double>(K, 1.0));
    for (std::size_t v = n; v-- > 1;) {
        const auto p = static_cast<std::size_t>(f.parent[v]);
        for (int i = 0; i < K; ++i) {
            double s = 0.0;
            for (int j = 0; j < K; ++j) {
                double den = coord[p][i] + coord[v][j];
                if (den == 0.0)
                    throw PoleError("tree integrand has a pole");
                s += weight[v][j] * inner[v][j] / den;
            }
            inner[p][i] *= s;
        }
    }
    double value = 0.0;
    for (int k = 0; k < K; ++k) {
        double den = coord[0][k] + c;
        if (den == 0.0)
            throw PoleError("tree integrand has a pole");
        value += weight[0][k] * inner[0][k] / den;
    }
    if (!std::isfinite(value))
        throw NumericError("tree integral overflowed");
    return value;
}

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys)
{
    const double n = static_cast<double>(xs.size());
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_line: need at least two points");
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

TreeIntegralResult evaluate_tree_integral(const RootedTree& t, double c, double q, int K, bool alternate)
{
    TreeIntegralResult r;
    r.value = tree_integral_value(t, c, q, K, alternate);

    // Trailing window: the last quarter of [1, K], at most nine sample points.
    int lo = std::max(1, K - K / 4);
    int points = std::min(9, K - lo + 1);
    if (points < 2) {
        lo = std::max(1, K - 1);
        points = K - lo + 1;
    }
    for (int i = 0; i < points; ++i) {
        int k = points == 1 ? K : lo + static_cast<int>(std::lround(double(K - lo) * i / (points - 1)));
        if (!r.window_K.empty() && r.window_K.back() == k)
            continue;
        r.window_K.push_back(k);
        r.window_values.push_back(k == K ? r.value : tree_integral_value(t, c, q, k, alternate));
    }
    if (r.window_K.size() >= 2) {
        std::vector<double> xs(r.window_K.begin(), r.window_K.end());
        r.fit = fit_line(xs, r.window_values);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Formal integration words

int integral_word_exchange(int n, int m)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("integral_word_exchange: n and m must be positive");

    struct Letter {
        bool dy;
        int word; // 0: first factor, 1: second
    };
    std::vector<Letter> w;
    auto push_word = [&](int len, int tag) {
        w.push_back({true, tag});
        for (int i = 1; i < len; ++i)
            w.push_back({false, tag});
    };
    push_word(n, 0);
    push_word(m, 1);

    // Bubble letters of the second word to the front. dx's commute with each
    // other, dy's commute with each other, and dy dx = q dx dy.
    int exponent = 0;
    for (bool swapped = true; swapped;) {
        swapped = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i].word == 0 && w[i + 1].word == 1) {
                if (w[i].dy && !w[i + 1].dy)
                    exponent += 1;
                else if (!w[i].dy && w[i + 1].dy)
                    exponent -= 1;
                std::swap(w[i], w[i + 1]);
                swapped = true;
            }
        }
    }
    return exponent;
}

// ---------------------------------------------------------------------------
// Manin plane

std::size_t TruncatedOperator::index(int row, int col) const
{
    if (row < 0 || col < 0 || row >= n_ || col >= n_)
        throw std::out_of_range("TruncatedOperator: index out of range");
    return static_cast<std::size_t>(row) * n_ + col;
}

TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b)
{
    if (a.n_ != b.n_)
        throw std::invalid_argument("TruncatedOperator: dimension mismatch");
    TruncatedOperator out(a.n_);
    for (int i = 0; i < a.n_; ++i)
        for (int k = 0; k < a.n_; ++k) {
            const Laurent& aik = a.at(i, k);
            if (aik.is_zero())
                continue;
            for (int j = 0; j < a.n_; ++j)
                if (!b.at(k, j).is_zero())
                    out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b)
{
    if (a.n_ != b.n_)
        throw std::invalid_argument("TruncatedOperator: dimension mismatch");
    TruncatedOperator out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i)
        out.entries_[i] -= b.entries_[i];
    return out;
}

TruncatedOperator operator*(const Laurent& s, const TruncatedOperator& a)
{
    TruncatedOperator out = a;
    for (auto& e : out.entries_)
        e = s * e;
    return out;
}

bool TruncatedOperator::column_is_zero(int col) const
{
    for (int row = 0; row < n_; ++row)
        if (!at(row, col).is_zero())
            return false;
    return true;
}

ManinOperators manin_operators(int N, int n)
{
    if (N < 1)
        throw std::invalid_argument("manin_operators: dimension must be positive");
    if (n < 1 || n >= N)
        throw std::invalid_argument("manin_operators: need 1 <= n < N");
    ManinOperators ops{TruncatedOperator(N), TruncatedOperator(N), TruncatedOperator(N)};
    for (int k = 0; k < N; ++k) {
        ops.x.at(k, k) = Laurent::q_pow(k);
        if (k + 1 < N)
            ops.y.at(k + 1, k) = Laurent(1);
    }
    TruncatedOperator yn = ops.y;
    for (int i = 1; i < n; ++i)
        yn = yn * ops.y;
    ops.delta = ops.x * yn;
    return ops;
}

DeltaRelationReport delta_relation_check(int n, int m, int N)
{
    if (n + m >= N)
        throw std::invalid_argument("delta_relation_check: truncation-safe region is empty (need n + m < N)");
    TruncatedOperator dn = manin_operators(N, n).delta;
    TruncatedOperator dm = manin_operators(N, m).delta;
    TruncatedOperator diff = dn * dm - Laurent::q_pow(m - n) * (dm * dn);

    DeltaRelationReport r{n, m, N, 0, N - n - m - 1, true};
    for (int j = r.first_column; j <= r.last_column; ++j)
        if (!diff.column_is_zero(j))
            r.holds = false;
    return r;
}

} // namespace qck
