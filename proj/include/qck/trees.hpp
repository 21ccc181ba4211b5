/**
 * @file trees.hpp
 * @brief Canonical unordered rooted trees, forests and admissible cuts.
 *
 * A tree is stored in canonical form: children sorted under tree_order, with
 * the bracket encoding ("[]" for a single vertex, "[T1T2...]" otherwise)
 * cached alongside. Two canonical trees are equal iff their encodings are.
 */

#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qck {

class RootedTree {
public:
    /// The single vertex.
    RootedTree();

    /// Root with the given children, in any order; the result is canonical.
    explicit RootedTree(std::vector<RootedTree> children);

    /// Parses a bracket encoding (whitespace tolerated) and canonicalizes it.
    static RootedTree parse(std::string_view text);

    const std::vector<RootedTree>& children() const { return children_; }
    const std::string& encoding() const { return code_; }
    int vertices() const { return size_; }
    bool is_vertex() const { return children_.empty(); }

    friend bool operator==(const RootedTree& a, const RootedTree& b) { return a.code_ == b.code_; }
    friend std::strong_ordering operator<=>(const RootedTree& a, const RootedTree& b);

private:
    std::vector<RootedTree> children_;
    std::string code_;
    int size_ = 1;
};

/// Total order: vertex count first, then lexicographic bracket encoding.
std::strong_ordering tree_order(const RootedTree& a, const RootedTree& b);

/// Raw (possibly non-canonical) tree, as read from input or built by hand.
struct RawTree {
    std::vector<RawTree> children;
};

RootedTree canonicalize(const RawTree& raw);

/// A multiset of trees kept sorted under tree_order.
class Forest {
public:
    Forest() = default;
    explicit Forest(std::vector<RootedTree> trees);

    const std::vector<RootedTree>& trees() const { return trees_; }
    bool empty() const { return trees_.empty(); }
    std::size_t size() const { return trees_.size(); }
    int vertices() const;

    friend bool operator==(const Forest&, const Forest&) = default;
    friend auto operator<=>(const Forest&, const Forest&) = default;

private:
    std::vector<RootedTree> trees_;
};

int vertex_count(const RootedTree& t);
int vertex_count(const Forest& f);

/// One admissible cut: the pruned forest and the trunk holding the root.
struct Cut {
    Forest pruned;
    RootedTree trunk;
};

/// All canonical trees with n vertices, in tree_order.
std::vector<RootedTree> enumerate_trees(int n);

inline constexpr int kMaxEnumerationVertices = 15;

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One entry per admissible nonempty edge subset; equal (P,R) pairs from
/// distinct edge subsets are kept as separate entries.
std::vector<Cut> admissible_cuts(const RootedTree& t);

/// Path graph on n vertices.
RootedTree ladder(int n);

} // namespace qck
