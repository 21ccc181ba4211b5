#include "cli.hpp"

#include "qck/hopf.hpp"
#include "qck/qcalc.hpp"
#include "qck/textio.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <iostream>
#include <iterator>
#include <sstream>

namespace qck::cli {

using nlohmann::json;

namespace {

std::string num(double v) { return fmt::format("{:.12g}", v); }

std::string read_expr(const std::string& arg, std::istream& in)
{
    if (arg != "-")
        return arg;
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string residual_text(const ResidualReport& r)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Element>)
                return print_element(v);
            else
                return print_tensor(v);
        },
        r.residual);
}

struct CheckOutcome {
    std::vector<ResidualReport> reports;
};

CheckOutcome run_check(const std::string& name, int vmax)
{
    CheckOutcome o;
    if (name == "lemma1") {
        auto trees = trees_up_to(vmax);
        for (const auto& a : trees)
            for (const auto& b : trees)
                o.reports.push_back(lemma1_residual(a, b));
    } else if (name == "coassoc") {
        for (Sector s : {Sector::plain, Sector::hat})
            for (const auto& t : trees_up_to(vmax)) {
                Monomial m = Monomial::tree(t, s);
                o.reports.push_back(coassociativity_residual(Element(m), print_monomial(m)));
            }
    } else if (name == "counit") {
        for (Sector s : {Sector::plain, Sector::hat})
            for (const auto& m : monomials_up_to(vmax, s, {-1, 0, 1})) {
                if (s == Sector::hat && m.sector == Sector::plain)
                    continue; // the unit is listed once, with the plain sector
                TensorElement d = coproduct(m);
                Element lhs = counit_left(d) - Element(m);
                Element rhs = counit_right(d) - Element(m);
                Element both = lhs + rhs;
                bool ok = lhs.is_zero() && rhs.is_zero();
                o.reports.push_back({print_monomial(m), ok ? Element() : both, ok});
            }
    } else if (name == "left-antipode") {
        for (const auto& t : trees_up_to(vmax))
            o.reports.push_back(left_antipode_residual(Monomial::tree(t)));
    } else if (name == "defect-crosscheck") {
        for (const auto& t : trees_up_to(vmax)) {
            auto r = right_antipode_residual(Monomial::tree(t));
            Element diff = std::get<Element>(r.residual) - right_defect_closed_form(t);
            r.vanished = diff.is_zero();
            o.reports.push_back(std::move(r));
        }
    }
    return o;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in)
{
    CLI::App app{"Exact kernel for the q-deformed Hopf algebra of rooted trees", "qck"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable output");

    std::string expr, tree, f_text, kind = "lower", which;
    int n = 0, m = 0, dim = 0, vmax = 4, samples = 500, K = 100;
    std::uint64_t seed = 1;
    double c = 1.0, q = 0.5;
    bool alternate = false;

    auto* normalize = app.add_subcommand("normalize", "Normal form of an element");
    normalize->add_option("EXPR", expr, "Element text, or - for stdin")->required();
    auto* copro = app.add_subcommand("coproduct", "Coproduct of an element");
    copro->add_option("EXPR", expr, "Element text, or - for stdin")->required();
    auto* antipode = app.add_subcommand("antipode", "Antipode recursion on a plain tree");
    antipode->add_option("--tree", tree, "Bracket encoding")->required();
    auto* sq = app.add_subcommand("sq", "Sector-swapping left antipode S_q");
    sq->add_option("EXPR", expr, "Element text, or - for stdin")->required();
    auto* defect = app.add_subcommand("defect", "Right-antipode defect of a tree");
    defect->add_option("--tree", tree, "Bracket encoding")->required();
    auto* cuts = app.add_subcommand("cuts", "Admissible cuts of a tree");
    cuts->add_option("--tree", tree, "Bracket encoding")->required();
    auto* enumerate = app.add_subcommand("enumerate", "All rooted trees with N vertices");
    enumerate->add_option("--n", n, "Vertex count")->required();

    auto* check = app.add_subcommand("check", "Identity suites over all small trees");
    check->add_option("SUITE", which, "Suite name")
        ->required()
        ->check(CLI::IsMember({"lemma1", "coassoc", "counit", "left-antipode", "defect-crosscheck"}));
    check->add_option("--vmax", vmax, "Largest vertex count")->check(CLI::Range(1, 7));

    auto* probe = app.add_subcommand("probe", "Informational probes");
    probe->add_option("PROBE", which, "Probe name")->required()->check(CLI::IsMember({"assoc", "qminus1"}));
    probe->add_option("--vmax", vmax, "Largest vertex count")->check(CLI::Range(1, 4));
    probe->add_option("--samples", samples, "Random triples per sector class")->check(CLI::PositiveNumber);
    probe->add_option("--seed", seed, "Random seed");

    auto* qint = app.add_subcommand("qint", "Truncated Jackson q-integral");
    qint->add_option("--kind", kind, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));
    qint->add_option("--f", f_text, "Integrand in x and c")->required();
    qint->add_option("--c", c, "Partition constant")->required();
    qint->add_option("--q", q, "Deformation parameter in (0,1)")->required();
    qint->add_option("--K", K, "Number of nodes")->required();

    auto* uvir = app.add_subcommand("uvir", "UV/IR exchange of the two Jackson sums");
    uvir->add_option("--f", f_text, "Integrand in x and c")->required();
    uvir->add_option("--c", c, "Partition constant")->required();
    uvir->add_option("--q", q, "Deformation parameter in (0,1)")->required();
    uvir->add_option("--K", K, "Number of nodes")->required();

    auto* treeint = app.add_subcommand("treeint", "Nested q-integral of a tree's toy integrand");
    treeint->add_option("--tree", tree, "Bracket encoding")->required();
    treeint->add_option("--c", c, "Partition constant")->required();
    treeint->add_option("--q", q, "Deformation parameter in (0,1)")->required();
    treeint->add_option("--K", K, "Number of nodes")->required();
    treeint->add_flag("--alternate", alternate, "Invert the variable at odd depths");

    auto* manin = app.add_subcommand("manin", "delta_n delta_m = q^{m-n} delta_m delta_n on the truncated shift basis");
    manin->add_option("--n", n, "First index")->required();
    manin->add_option("--m", m, "Second index")->required();
    manin->add_option("--N", dim, "Truncation dimension")->required();

    auto* wordx = app.add_subcommand("wordx", "Exchange exponent of two integration words");
    wordx->add_option("--n", n, "Length of the first word")->required();
    wordx->add_option("--m", m, "Length of the second word")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return usage_error;
    }

    try {
        if (normalize->parsed()) {
            Element a = parse_element(read_expr(expr, in));
            out << (as_json ? element_to_json(a).dump() : print_element(a)) << "\n";
        } else if (copro->parsed()) {
            TensorElement d = coproduct(parse_element(read_expr(expr, in)));
            out << (as_json ? tensor_to_json(d).dump() : print_tensor(d)) << "\n";
        } else if (antipode->parsed()) {
            Element s = antipode_classical(RootedTree::parse(tree));
            out << (as_json ? element_to_json(s).dump() : print_element(s)) << "\n";
        } else if (sq->parsed()) {
            Element s = s_q(parse_element(read_expr(expr, in)));
            out << (as_json ? element_to_json(s).dump() : print_element(s)) << "\n";
        } else if (defect->parsed()) {
            RootedTree t = RootedTree::parse(tree);
            auto r = right_antipode_residual(Monomial::tree(t));
            const Element& direct = std::get<Element>(r.residual);
            Element closed = right_defect_closed_form(t);
            if (as_json) {
                out << json{{"subject", r.subject},
                            {"residual", print_element(direct)},
                            {"vanished", r.vanished},
                            {"closed_form", print_element(closed)},
                            {"agrees", direct == closed},
                            {"element", element_to_json(direct)}}
                           .dump()
                    << "\n";
            } else {
                out << print_element(direct) << "\n";
            }
        } else if (cuts->parsed()) {
            RootedTree t = RootedTree::parse(tree);
            json arr = json::array();
            for (const auto& cut : admissible_cuts(t)) {
                Monomial p = Monomial::forest(cut.pruned);
                if (as_json) {
                    json pruned = json::array();
                    for (const auto& x : cut.pruned.trees())
                        pruned.push_back(x.encoding());
                    arr.push_back({{"pruned", pruned}, {"trunk", cut.trunk.encoding()}});
                } else {
                    out << print_monomial(p) << "|" << cut.trunk.encoding() << "\n";
                }
            }
            if (as_json)
                out << arr.dump() << "\n";
        } else if (enumerate->parsed()) {
            auto trees = enumerate_trees(n);
            if (as_json) {
                json arr = json::array();
                for (const auto& t : trees)
                    arr.push_back(t.encoding());
                out << arr.dump() << "\n";
            } else {
                for (const auto& t : trees)
                    out << t.encoding() << "\n";
            }
        } else if (check->parsed()) {
            auto outcome = run_check(which, vmax);
            bool all = std::all_of(outcome.reports.begin(), outcome.reports.end(),
                                   [](const ResidualReport& r) { return r.vanished; });
            if (as_json) {
                json results = json::array();
                for (const auto& r : outcome.reports)
                    results.push_back({{"subject", r.subject}, {"residual", residual_text(r)}, {"vanished", r.vanished}});
                out << json{{"check", which}, {"vmax", vmax}, {"passed", all}, {"results", results}}.dump() << "\n";
            } else {
                for (const auto& r : outcome.reports)
                    out << r.subject << ": " << (r.vanished ? "ok" : "FAIL ") << (r.vanished ? "" : residual_text(r))
                        << "\n";
                out << which << ": " << (all ? "all vanished" : "nonvanishing residuals") << "\n";
            }
            return all ? ok : check_failed;
        } else if (probe->parsed()) {
            if (which == "assoc") {
                auto rep = associativity_probe(vmax, samples, seed);
                auto bucket_json = [](const AssociativityReport::Bucket& b) {
                    json d = json::object();
                    for (const auto& [k, cnt] : b.discrepancy_exponents)
                        d[std::to_string(k)] = cnt;
                    return json{{"samples", b.samples},
                                {"equal", b.equal},
                                {"discrepancy_exponents", d},
                                {"unmatched", b.unmatched}};
                };
                if (as_json) {
                    out << json{{"plain", bucket_json(rep.plain)},
                                {"hat", bucket_json(rep.hat)},
                                {"mixed", bucket_json(rep.mixed)}}
                               .dump()
                        << "\n";
                } else {
                    auto line = [&](const char* name, const AssociativityReport::Bucket& b) {
                        out << name << ": " << b.equal << "/" << b.samples << " equal";
                        for (const auto& [k, cnt] : b.discrepancy_exponents)
                            out << ", q^" << k << " x" << cnt;
                        if (b.unmatched)
                            out << ", unmatched x" << b.unmatched;
                        out << "\n";
                    };
                    line("plain", rep.plain);
                    line("hat", rep.hat);
                    line("mixed", rep.mixed);
                }
            } else {
                auto rows = q_minus1_probe(vmax);
                if (as_json) {
                    json arr = json::array();
                    for (const auto& r : rows)
                        arr.push_back({{"tree", r.tree.encoding()},
                                       {"left_q_minus_1", r.left_at_minus_one},
                                       {"right_q_minus_1", r.right_at_minus_one},
                                       {"left_classical", r.left_classical},
                                       {"right_classical", r.right_classical}});
                    out << arr.dump() << "\n";
                } else {
                    for (const auto& r : rows)
                        out << r.tree.encoding() << ": q=-1 left " << r.left_at_minus_one << " right "
                            << r.right_at_minus_one << "; classical left " << r.left_classical << " right "
                            << r.right_classical << "\n";
                }
            }
        } else if (qint->parsed()) {
            QIntegralSpec spec{kind == "lower" ? IntegralKind::lower : IntegralKind::upper, c, q, K};
            double v = jackson_integral(spec, Integrand::parse(f_text));
            out << (as_json ? json{{"value", v}}.dump() : num(v)) << "\n";
        } else if (uvir->parsed()) {
            auto r = uvir_exchange_check(Integrand::parse(f_text), c, q, K);
            if (as_json) {
                out << json{{"point_bijection", r.point_bijection}, {"upper", r.upper},
                            {"lower", r.lower},                     {"mirrored_lower", r.mirrored_lower},
                            {"inversion_residual", r.inversion_residual}, {"scaling", r.scaling},
                            {"constant_term", r.constant_term},     {"ratio", r.ratio}}
                           .dump()
                    << "\n";
            } else {
                out << "point_bijection " << (r.point_bijection ? "true" : "false") << "\n"
                    << "upper " << num(r.upper) << "\n"
                    << "lower " << num(r.lower) << "\n"
                    << "mirrored_lower " << num(r.mirrored_lower) << "\n"
                    << "inversion_residual " << num(r.inversion_residual) << "\n"
                    << "scaling " << num(r.scaling) << "\n"
                    << "constant_term " << num(r.constant_term) << "\n"
                    << "ratio " << num(r.ratio) << "\n";
            }
        } else if (treeint->parsed()) {
            auto r = evaluate_tree_integral(RootedTree::parse(tree), c, q, K, alternate);
            if (as_json) {
                out << json{{"value", r.value}, {"slope", r.fit.slope}, {"intercept", r.fit.intercept},
                            {"residual", r.fit.residual}, {"window_K", r.window_K}}
                           .dump()
                    << "\n";
            } else {
                out << "value " << num(r.value) << "\n"
                    << "slope " << num(r.fit.slope) << "\n"
                    << "intercept " << num(r.fit.intercept) << "\n"
                    << "residual " << num(r.fit.residual) << "\n";
            }
        } else if (manin->parsed()) {
            auto r = delta_relation_check(n, m, dim);
            if (as_json) {
                out << json{{"n", r.n}, {"m", r.m}, {"N", r.N}, {"region", {r.first_column, r.last_column}},
                            {"holds", r.holds}}
                           .dump()
                    << "\n";
            } else {
                out << "delta_" << n << " delta_" << m << " = q^" << (m - n) << " delta_" << m << " delta_" << n
                    << " on columns " << r.first_column << ".." << r.last_column << ": "
                    << (r.holds ? "holds" : "FAILS") << "\n";
            }
            return r.holds ? ok : check_failed;
        } else if (wordx->parsed()) {
            int p = integral_word_exchange(n, m);
            out << (as_json ? json{{"exponent", p}}.dump() : "q^" + std::to_string(p)) << "\n";
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
    return ok;
}

} // namespace qck::cli
