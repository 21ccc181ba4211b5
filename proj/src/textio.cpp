#include "qck/textio.hpp"

#include <cctype>
#include <limits>
#include <vector>

namespace qck {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Printing

std::string print_monomial(const Monomial& m)
{
    if (m.is_unit())
        return "1";
    std::string body;
    for (const auto& t : m.trees) {
        if (!body.empty())
            body += "*";
        body += t.encoding();
    }
    if (m.e_power != 0) {
        if (!body.empty())
            body += "*";
        body += m.e_power == 1 ? std::string("e") : "e^" + std::to_string(m.e_power);
    }
    return m.sector == Sector::hat ? "hat(" + body + ")" : body;
}

namespace {

// Appends one signed term "c*body" to out, pulling the sign of the leading
// coefficient out front.
void append_term(std::string& out, const Laurent& c, const std::string& body)
{
    bool negative = c.terms().rbegin()->second < 0;
    Laurent mag = negative ? -c : c;
    if (negative)
        out += "-";
    else if (!out.empty())
        out += "+";
    if (mag.is_one())
        out += body;
    else
        out += "(" + mag.str() + ")*" + body;
}

template <std::size_t N>
std::string print_tensor_impl(const TensorPower<N>& a)
{
    if (a.is_zero())
        return "0";
    std::string out;
    for (const auto& [k, c] : a.terms()) {
        std::string body;
        for (std::size_t i = 0; i < N; ++i) {
            if (i)
                body += "|";
            body += print_monomial(k[i]);
        }
        append_term(out, c, body);
    }
    return out;
}

} // namespace

std::string print_element(const Element& a)
{
    if (a.is_zero())
        return "0";
    std::string out;
    for (const auto& [m, c] : a.terms())
        append_term(out, c, print_monomial(m));
    return out;
}

std::string print_tensor(const TensorElement& a) { return print_tensor_impl(a); }
std::string print_tensor(const TripleTensor& a) { return print_tensor_impl(a); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ElementReader {
public:
    explicit ElementReader(std::string_view text) : text_(text) {}

    Element read_all()
    {
        Element sum;
        skip_ws();
        int sign = 1;
        if (peek() == '-') {
            sign = -1;
            ++pos_;
        }
        sum += read_signed(sign);
        for (;;) {
            skip_ws();
            if (at_end())
                return sum;
            if (peek() != '+' && peek() != '-')
                throw ParseError("unexpected token", span1());
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
            sum += read_signed(sign);
        }
    }

private:
    Element read_signed(int sign)
    {
        Element t = read_term();
        return sign < 0 ? -t : t;
    }

    Element read_term()
    {
        skip_ws();
        Laurent coeff(1);
        if (peek() == '(') {
            std::size_t open = pos_++;
            std::size_t close = text_.find(')', pos_);
            if (close == std::string_view::npos)
                throw ParseError("unterminated coefficient", {open, text_.size()});
            try {
                coeff = Laurent::parse(text_.substr(pos_, close - pos_));
            } catch (const ParseError& e) {
                throw ParseError("malformed coefficient",
                                 {pos_ + e.span().begin, pos_ + e.span().end});
            }
            pos_ = close + 1;
            skip_ws();
            expect('*');
        }
        return coeff * read_mono();
    }

    Element read_mono()
    {
        skip_ws();
        if (peek() == '1') {
            ++pos_;
            return Element::unit();
        }
        if (peek() == '0') {
            ++pos_;
            return Element();
        }
        if (text_.substr(pos_, 3) == "hat") {
            std::size_t start = pos_;
            pos_ += 3;
            skip_ws();
            if (peek() != '(')
                throw ParseError("expected '(' after hat", {start, std::min(pos_ + 1, text_.size())});
            ++pos_;
            auto word = read_plainmono();
            skip_ws();
            expect(')');
            return normalize_word(Sector::hat, word);
        }
        return normalize_word(Sector::plain, read_plainmono());
    }

    std::vector<Generator> read_plainmono()
    {
        std::vector<Generator> word;
        word.push_back(read_gen());
        for (;;) {
            std::size_t save = pos_;
            skip_ws();
            if (peek() != '*') {
                pos_ = save;
                return word;
            }
            ++pos_;
            word.push_back(read_gen());
        }
    }

    Generator read_gen()
    {
        skip_ws();
        if (peek() == '[')
            return read_tree();
        if (peek() == 'e') {
            ++pos_;
            std::size_t save = pos_;
            skip_ws();
            if (peek() != '^') {
                pos_ = save;
                return EPower{1};
            }
            ++pos_;
            skip_ws();
            return EPower{read_int()};
        }
        if (at_end())
            throw ParseError("unexpected end of input", {pos_, pos_});
        throw ParseError("unknown token", span1());
    }

    RootedTree read_tree()
    {
        std::size_t start = pos_;
        int depth = 0;
        do {
            if (at_end())
                throw ParseError("unterminated tree", {start, text_.size()});
            char ch = text_[pos_];
            if (ch == '[')
                ++depth;
            else if (ch == ']')
                --depth;
            else if (!std::isspace(static_cast<unsigned char>(ch)))
                throw ParseError("unexpected character in tree", span1());
            ++pos_;
        } while (depth > 0);
        return RootedTree::parse(text_.substr(start, pos_ - start));
    }

    int read_int()
    {
        std::size_t start = pos_;
        if (peek() == '-' || peek() == '+')
            ++pos_;
        std::size_t digits = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == digits)
            throw ParseError("expected integer", {start, std::min(pos_ + 1, text_.size())});
        try {
            return std::stoi(std::string(text_.substr(start, pos_ - start)));
        } catch (const std::out_of_range&) {
            throw ParseError("integer out of range", {start, pos_});
        }
    }

    void expect(char c)
    {
        if (peek() != c)
            throw ParseError(std::string("expected '") + c + "'", span1());
        ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    SourceSpan span1() const { return {pos_, std::min(pos_ + 1, text_.size())}; }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Element parse_element(std::string_view text) { return ElementReader(text).read_all(); }

// ---------------------------------------------------------------------------
// JSON

namespace {

json integer_to_json(const mpz_class& z)
{
    if (z.fits_slong_p())
        return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

mpz_class integer_from_json(const json& j, const std::string& path)
{
    if (j.is_number_integer())
        return mpz_class(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        mpz_class z;
        if (z.set_str(j.get<std::string>(), 10) != 0)
            throw SchemaError("not a decimal integer", path);
        return z;
    }
    throw SchemaError("expected integer", path);
}

json monomial_record(const Monomial& m)
{
    json trees = json::array();
    for (const auto& t : m.trees)
        trees.push_back(t.encoding());
    return {{"sector", m.sector == Sector::plain ? "plain" : "hat"}, {"trees", trees}, {"epow", m.e_power}};
}

Monomial monomial_from_record(const json& j, const std::string& path)
{
    if (!j.is_object())
        throw SchemaError("expected object", path);
    Monomial m;
    if (!j.contains("sector") || !j["sector"].is_string())
        throw SchemaError("missing or non-string sector", path + "/sector");
    std::string sector = j["sector"].get<std::string>();
    if (sector == "plain")
        m.sector = Sector::plain;
    else if (sector == "hat")
        m.sector = Sector::hat;
    else
        throw SchemaError("sector must be \"plain\" or \"hat\"", path + "/sector");

    if (!j.contains("trees") || !j["trees"].is_array())
        throw SchemaError("missing or non-array trees", path + "/trees");
    for (std::size_t i = 0; i < j["trees"].size(); ++i) {
        const auto& t = j["trees"][i];
        std::string tp = path + "/trees/" + std::to_string(i);
        if (!t.is_string())
            throw SchemaError("tree must be a bracket string", tp);
        try {
            m.trees.push_back(RootedTree::parse(t.get<std::string>()));
        } catch (const ParseError& e) {
            throw SchemaError(e.what(), tp);
        }
    }
    if (!std::is_sorted(m.trees.begin(), m.trees.end()))
        throw SchemaError("trees are not in canonical order", path + "/trees");

    if (!j.contains("epow") || !j["epow"].is_number_integer())
        throw SchemaError("epow must be an integer", path + "/epow");
    auto e = j["epow"].get<std::int64_t>();
    if (e < std::numeric_limits<int>::min() || e > std::numeric_limits<int>::max())
        throw SchemaError("epow out of range", path + "/epow");
    m.e_power = static_cast<int>(e);
    if (m.is_unit() && m.sector == Sector::hat)
        throw SchemaError("the unit is recorded in the plain sector", path + "/sector");
    return m;
}

Laurent coefficient_from_json(const json& j, const std::string& path)
{
    if (!j.is_array() || j.empty())
        throw SchemaError("coeff must be a nonempty array", path);
    Laurent c;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& term = j[i];
        std::string tp = path + "/" + std::to_string(i);
        if (!term.is_array() || term.size() != 3)
            throw SchemaError("coefficient term must be [exp, numerator, denominator]", tp);
        if (!term[0].is_number_integer())
            throw SchemaError("exponent must be an integer", tp + "/0");
        auto k = term[0].get<std::int64_t>();
        if (k < std::numeric_limits<int>::min() || k > std::numeric_limits<int>::max())
            throw SchemaError("exponent out of range", tp + "/0");
        mpz_class num = integer_from_json(term[1], tp + "/1");
        mpz_class den = integer_from_json(term[2], tp + "/2");
        if (den == 0)
            throw SchemaError("zero denominator", tp + "/2");
        Rational r(num, den);
        r.canonicalize();
        c += Laurent::monomial(r, static_cast<int>(k));
    }
    return c;
}

} // namespace

json coefficient_to_json(const Laurent& c)
{
    json out = json::array();
    for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it)
        out.push_back({it->first, integer_to_json(it->second.get_num()), integer_to_json(it->second.get_den())});
    return out;
}

json element_to_json(const Element& a)
{
    json out = json::array();
    for (const auto& [m, c] : a.terms()) {
        json rec = monomial_record(m);
        rec["coeff"] = coefficient_to_json(c);
        out.push_back(std::move(rec));
    }
    return out;
}

json tensor_to_json(const TensorElement& a)
{
    json out = json::array();
    for (const auto& [k, c] : a.terms())
        out.push_back({{"left", monomial_record(k[0])}, {"right", monomial_record(k[1])}, {"coeff", coefficient_to_json(c)}});
    return out;
}

Element element_from_json(const json& j)
{
    if (!j.is_array())
        throw SchemaError("expected array of monomial records", "");
    Element out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string path = "/" + std::to_string(i);
        Monomial m = monomial_from_record(j[i], path);
        if (!j[i].contains("coeff"))
            throw SchemaError("missing coeff", path + "/coeff");
        out.add(m, coefficient_from_json(j[i]["coeff"], path + "/coeff"));
    }
    return out;
}

TensorElement tensor_from_json(const json& j)
{
    if (!j.is_array())
        throw SchemaError("expected array of tensor records", "");
    TensorElement out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string path = "/" + std::to_string(i);
        const auto& rec = j[i];
        if (!rec.is_object() || !rec.contains("left") || !rec.contains("right") || !rec.contains("coeff"))
            throw SchemaError("tensor record needs left, right and coeff", path);
        out.add({monomial_from_record(rec["left"], path + "/left"), monomial_from_record(rec["right"], path + "/right")},
                coefficient_from_json(rec["coeff"], path + "/coeff"));
    }
    return out;
}

} // namespace qck
