#ifndef ZARISKI_TOPOLOGY_HPP
#define ZARISKI_TOPOLOGY_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zariski/pairing.hpp"

namespace zariski {

class UnionFind {
public:
    explicit UnionFind(std::size_t n);

    std::size_t find(std::size_t x);
    void unite(std::size_t x, std::size_t y);
    std::size_t components() const noexcept { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
    std::size_t components_;
};

/// Graph on the 2k lifts s_{+P_i} (vertex 2i) and s_{-P_i} (vertex 2i + 1);
/// an edge joins two lifts whose intersection number is 1.
class LiftGraph {
public:
    struct Edge {
        std::size_t from;
        std::size_t to;
    };

    explicit LiftGraph(std::size_t line_count) : line_count_(line_count) {}

    static std::size_t vertex(std::size_t line, int sign) { return 2 * line + (sign < 0 ? 1 : 0); }

    /// SamePoint joins (+,+) and (-,-); OppositePoint joins (+,-) and (-,+).
    void add_pair(std::size_t i, std::size_t j, MeetKind kind);

    std::size_t line_count() const noexcept { return line_count_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t components() const;

private:
    std::size_t line_count_;
    std::vector<Edge> edges_;
};

/// Connected number of three bitangents from the parity of -1 entries.
int connected_number_triple(const SignMatrix& g);

/// det(G - 3 I) for an arbitrary sign matrix (exact integer determinant).
long long det_minus_three_identity(const SignMatrix& g);

/// Connected number of three bitangents from det(G - 3 I) = +-2.
/// Throws MalformedMatrix for other sizes or determinant values.
int connected_number_det(const SignMatrix& g);

/// Number of connected components of the lift graph of the sections.
std::size_t connected_number_liftgraph(const std::vector<BitangentSection>& sections);

/// (#triples with connected number 1, #triples with connected number 2).
struct InvariantPair {
    std::size_t count1 = 0;
    std::size_t count2 = 0;

    auto operator<=>(const InvariantPair&) const = default;
    std::string to_string() const;
};

InvariantPair subarrangement_invariant(const SignMatrix& g);
InvariantPair subarrangement_invariant(const std::vector<BitangentSection>& sections);

/// m_I (n - 2) = 2 M + #c^{-1}(2).
struct ParityReport {
    std::size_t minus_count = 0;  // m_I
    std::size_t n = 0;
    std::size_t count2 = 0;
    long long big_m = 0;  // M
};

/// Computes both sides of the identity, checks them against each other and
/// against the triple-level counts. Throws IdentityViolated on disagreement.
ParityReport parity_identity_check(const SignMatrix& g);
ParityReport parity_identity_check(const std::vector<BitangentSection>& sections);

/// Pairwise and triple-wise data for a fixed list of sections, computed once
/// so that subsets can be examined without further field arithmetic.
class PairTable {
public:
    static PairTable build(const QuarticCurve& curve, const std::vector<BitangentSection>& sections);

    std::size_t size() const noexcept { return size_; }
    /// Meet kind for a pair of positions; nullopt when the lines coincide or
    /// cross on the curve.
    const std::optional<MeetKind>& kind(std::size_t i, std::size_t j) const { return kinds_[i * size_ + j]; }
    bool identical(std::size_t i, std::size_t j) const { return identical_[i * size_ + j]; }
    bool meets_on_curve(std::size_t i, std::size_t j) const { return on_curve_[i * size_ + j]; }
    bool concurrent(std::size_t i, std::size_t j, std::size_t k) const;

    /// Reason a subset cannot be classified, or nullopt when its combinatorics is generic.
    std::optional<std::string> degeneracy(const std::vector<std::size_t>& subset) const;
    /// Sign matrix of a nondegenerate subset; labels are subset positions + 1.
    SignMatrix sign_matrix(const std::vector<std::size_t>& subset) const;
    std::size_t lift_components(const std::vector<std::size_t>& subset) const;

private:
    std::size_t size_ = 0;
    std::vector<std::optional<MeetKind>> kinds_;
    std::vector<bool> identical_;
    std::vector<bool> on_curve_;
    std::vector<std::array<std::size_t, 3>> concurrent_;  // sorted
};

struct ClassifyResult {
    struct Excluded {
        std::vector<std::size_t> subset;
        std::string reason;
    };

    std::size_t subset_size = 0;
    std::uint64_t examined = 0;
    /// Subsets (0-based positions, lexicographic) grouped by invariant.
    std::map<InvariantPair, std::vector<std::vector<std::size_t>>> classes;
    std::vector<Excluded> excluded;
};

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Calls `visit` on every k-subset of {0, ..., n-1} in lexicographic order.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return;
    std::vector<std::size_t> subset(k);
    for (std::size_t i = 0; i < k; ++i) subset[i] = i;
    while (true) {
        visit(static_cast<const std::vector<std::size_t>&>(subset));
        std::size_t i = k;
        while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++subset[i - 1];
        for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
}

constexpr std::uint64_t kDefaultClassifyLimit = 1'000'000;

/// Groups all C(N, n) subsets by invariant pair. Throws LimitExceeded when
/// C(N, n) exceeds `limit`.
ClassifyResult classify_subsets(const PairTable& table, std::size_t n, std::uint64_t limit = kDefaultClassifyLimit);
ClassifyResult classify_subsets(const QuarticCurve& curve, const std::vector<BitangentSection>& sections,
                                std::size_t n, std::uint64_t limit = kDefaultClassifyLimit);

}  // namespace zariski

#endif  // ZARISKI_TOPOLOGY_HPP
