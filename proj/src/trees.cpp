#include "qck/trees.hpp"

#include "qck/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace qck {

RootedTree::RootedTree() : code_("[]"), size_(1) {}

RootedTree::RootedTree(std::vector<RootedTree> children) : children_(std::move(children))
{
    std::sort(children_.begin(), children_.end());
    code_ = "[";
    size_ = 1;
    for (const auto& c : children_) {
        code_ += c.code_;
        size_ += c.size_;
    }
    code_ += "]";
}

std::strong_ordering operator<=>(const RootedTree& a, const RootedTree& b)
{
    if (auto c = a.size_ <=> b.size_; c != 0)
        return c;
    return a.code_.compare(b.code_) <=> 0;
}

std::strong_ordering tree_order(const RootedTree& a, const RootedTree& b) { return a <=> b; }

namespace {

class BracketReader {
public:
    explicit BracketReader(std::string_view text) : text_(text) {}

    RawTree read_all()
    {
        skip_ws();
        RawTree t = read_tree();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("trailing characters after tree", {pos_, text_.size()});
        return t;
    }

private:
    RawTree read_tree()
    {
        if (pos_ >= text_.size() || text_[pos_] != '[')
            throw ParseError("expected '['", {pos_, std::min(pos_ + 1, text_.size())});
        std::size_t open = pos_++;
        RawTree t;
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size())
                throw ParseError("unterminated tree", {open, text_.size()});
            if (text_[pos_] == ']') {
                ++pos_;
                return t;
            }
            t.children.push_back(read_tree());
        }
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

RootedTree RootedTree::parse(std::string_view text) { return canonicalize(BracketReader(text).read_all()); }

RootedTree canonicalize(const RawTree& raw)
{
    std::vector<RootedTree> kids;
    kids.reserve(raw.children.size());
    for (const auto& c : raw.children)
        kids.push_back(canonicalize(c));
    return RootedTree(std::move(kids));
}

Forest::Forest(std::vector<RootedTree> trees) : trees_(std::move(trees)) { std::sort(trees_.begin(), trees_.end()); }

int Forest::vertices() const
{
    int v = 0;
    for (const auto& t : trees_)
        v += t.vertices();
    return v;
}

int vertex_count(const RootedTree& t) { return t.vertices(); }
int vertex_count(const Forest& f) { return f.vertices(); }

namespace {

// Forests of total size n built from trees of size <= max_part, as sorted
// multisets; trees of each size come from `by_size`.
void forests_of_size(int n, int max_part, const std::vector<std::vector<RootedTree>>& by_size,
                     std::vector<RootedTree>& current, std::vector<std::vector<RootedTree>>& out)
{
    if (n == 0) {
        out.push_back(current);
        return;
    }
    for (int part = std::min(n, max_part); part >= 1; --part) {
        for (const auto& t : by_size[part]) {
            // Non-increasing sequence to avoid permutations of the same multiset.
            if (!current.empty() && current.back() < t)
                continue;
            current.push_back(t);
            forests_of_size(n - part, part, by_size, current, out);
            current.pop_back();
        }
    }
}

} // namespace

std::vector<RootedTree> enumerate_trees(int n)
{
    if (n < 1)
        throw std::invalid_argument("enumerate_trees: n must be positive");
    if (n > kMaxEnumerationVertices)
        throw ResourceLimitError("enumerate_trees: n = " + std::to_string(n) + " exceeds limit " +
                                 std::to_string(kMaxEnumerationVertices));

    std::vector<std::vector<RootedTree>> by_size(n + 1);
    by_size[1] = {RootedTree()};
    for (int k = 2; k <= n; ++k) {
        std::vector<std::vector<RootedTree>> forests;
        std::vector<RootedTree> current;
        forests_of_size(k - 1, k - 1, by_size, current, forests);
        std::set<RootedTree> unique;
        for (auto& f : forests)
            unique.insert(RootedTree(std::move(f)));
        by_size[k].assign(unique.begin(), unique.end());
    }
    return by_size[n];
}

namespace {

struct PartialCut {
    std::vector<RootedTree> pruned;
    RootedTree trunk;
};

// Every admissible edge subset of t, the empty one first.
std::vector<PartialCut> cut_options(const RootedTree& t)
{
    // Per child: either keep the edge (with any admissible cut below it) or
    // cut the edge itself, which removes the whole child subtree.
    struct ChildOption {
        std::vector<RootedTree> pruned;
        bool kept;
        RootedTree trunk;
    };
    std::vector<std::vector<ChildOption>> per_child;
    for (const auto& c : t.children()) {
        std::vector<ChildOption> opts;
        for (auto& sub : cut_options(c))
            opts.push_back({std::move(sub.pruned), true, std::move(sub.trunk)});
        opts.push_back({{c}, false, RootedTree()});
        per_child.push_back(std::move(opts));
    }

    std::vector<PartialCut> result;
    std::vector<std::size_t> idx(per_child.size(), 0);
    auto advance = [&] {
        for (std::size_t i = per_child.size(); i-- > 0;) {
            if (++idx[i] < per_child[i].size())
                return true;
            idx[i] = 0;
        }
        return false;
    };
    do {
        PartialCut pc;
        std::vector<RootedTree> kids;
        for (std::size_t i = 0; i < per_child.size(); ++i) {
            const auto& opt = per_child[i][idx[i]];
            pc.pruned.insert(pc.pruned.end(), opt.pruned.begin(), opt.pruned.end());
            if (opt.kept)
                kids.push_back(opt.trunk);
        }
        pc.trunk = RootedTree(std::move(kids));
        result.push_back(std::move(pc));
    } while (advance());
    return result;
}

} // namespace

std::vector<Cut> admissible_cuts(const RootedTree& t)
{
    std::vector<Cut> cuts;
    for (auto& pc : cut_options(t)) {
        if (pc.pruned.empty())
            continue;
        cuts.push_back({Forest(std::move(pc.pruned)), std::move(pc.trunk)});
    }
    return cuts;
}

RootedTree ladder(int n)
{
    if (n < 1)
        throw std::invalid_argument("ladder: n must be positive");
    RootedTree t;
    for (int i = 1; i < n; ++i)
        t = RootedTree(std::vector<RootedTree>{t});
    return t;
}

} // namespace qck
