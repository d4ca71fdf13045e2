#include "zariski/topology.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "zariski/errors.hpp"

namespace zariski {

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
        const std::size_t next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

void UnionFind::unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    --components_;
}

void LiftGraph::add_pair(std::size_t i, std::size_t j, MeetKind kind) {
    if (kind == MeetKind::SamePoint) {
        edges_.push_back({vertex(i, 1), vertex(j, 1)});
        edges_.push_back({vertex(i, -1), vertex(j, -1)});
    } else {
        edges_.push_back({vertex(i, 1), vertex(j, -1)});
        edges_.push_back({vertex(i, -1), vertex(j, 1)});
    }
}

std::size_t LiftGraph::components() const {
    UnionFind uf(2 * line_count_);
    for (const auto& e : edges_) uf.unite(e.from, e.to);
    return uf.components();
}

namespace {

// Connected number of the triple (a, b, c) of positions in g.
int triple_number(const SignMatrix& g, std::size_t a, std::size_t b, std::size_t c) {
    const int minus = (g.at(a, b) == -1) + (g.at(a, c) == -1) + (g.at(b, c) == -1);
    return minus % 2 == 0 ? 1 : 2;
}

void require_size(const SignMatrix& g, std::size_t min_size, const char* what) {
    if (g.size() < min_size)
        throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(min_size) + " lines");
}

}  // namespace

int connected_number_triple(const SignMatrix& g) {
    if (g.size() != 3) throw MalformedMatrix("connected number of a triple needs a 3x3 sign matrix");
    return g.minus_count() % 2 == 0 ? 1 : 2;
}

long long det_minus_three_identity(const SignMatrix& g) {
    // Fraction-free Bareiss elimination.
    const std::size_t k = g.size();
    if (k == 0) return 1;
    std::vector<Integer> m(k * k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) m[r * k + c] = g.at(r, c) - (r == c ? 3 : 0);
    int sign = 1;
    Integer prev = 1;
    for (std::size_t p = 0; p + 1 < k; ++p) {
        if (m[p * k + p] == 0) {
            std::size_t swap_row = p + 1;
            while (swap_row < k && m[swap_row * k + p] == 0) ++swap_row;
            if (swap_row == k) return 0;
            for (std::size_t c = 0; c < k; ++c) std::swap(m[p * k + c], m[swap_row * k + c]);
            sign = -sign;
        }
        for (std::size_t r = p + 1; r < k; ++r)
            for (std::size_t c = p + 1; c < k; ++c)
                m[r * k + c] = (m[r * k + c] * m[p * k + p] - m[r * k + p] * m[p * k + c]) / prev;
        prev = m[p * k + p];
    }
    const Integer det = sign * m[k * k - 1];
    if (!det.fits_slong_p()) throw std::overflow_error("determinant exceeds 64 bits");
    return det.get_si();
}

int connected_number_det(const SignMatrix& g) {
    if (g.size() != 3) throw MalformedMatrix("determinant rule needs a 3x3 sign matrix");
    const long long det = det_minus_three_identity(g);
    if (det == 2) return 1;
    if (det == -2) return 2;
    throw MalformedMatrix("det(G - 3I) = " + std::to_string(det) + ", expected +-2");
}

std::size_t connected_number_liftgraph(const std::vector<BitangentSection>& sections) {
    if (sections.empty()) throw std::invalid_argument("connected number needs at least one line");
    LiftGraph graph(sections.size());
    for (std::size_t i = 0; i < sections.size(); ++i)
        for (std::size_t j = i + 1; j < sections.size(); ++j)
            graph.add_pair(i, j, intersection_datum(sections[i], sections[j], i, j).kind);
    return graph.components();
}

std::string InvariantPair::to_string() const {
    return "(" + std::to_string(count1) + "," + std::to_string(count2) + ")";
}

InvariantPair subarrangement_invariant(const SignMatrix& g) {
    require_size(g, 3, "subarrangement invariant");
    InvariantPair pair;
    for_each_combination(g.size(), 3, [&](const std::vector<std::size_t>& t) {
        if (triple_number(g, t[0], t[1], t[2]) == 1)
            ++pair.count1;
        else
            ++pair.count2;
    });
    return pair;
}

InvariantPair subarrangement_invariant(const std::vector<BitangentSection>& sections) {
    if (sections.size() < 3) throw std::invalid_argument("subarrangement invariant needs at least 3 lines");
    return subarrangement_invariant(gram_matrix(sections));
}

ParityReport parity_identity_check(const SignMatrix& g) {
    require_size(g, 3, "parity identity");
    ParityReport report;
    report.n = g.size();
    report.minus_count = g.minus_count();

    // Left side by direct summation over triples: sum of m_{ijk}, and the
    // counts M_0..M_3 of triples by their number of -1 entries.
    std::array<long long, 4> by_minus{};
    long long triple_sum = 0;
    for_each_combination(g.size(), 3, [&](const std::vector<std::size_t>& t) {
        const int m = (g.at(t[0], t[1]) == -1) + (g.at(t[0], t[2]) == -1) + (g.at(t[1], t[2]) == -1);
        ++by_minus[m];
        triple_sum += m;
    });
    report.count2 = static_cast<std::size_t>(by_minus[1] + by_minus[3]);

    const long long lhs = static_cast<long long>(report.minus_count) * static_cast<long long>(report.n - 2);
    if (lhs != triple_sum)
        throw IdentityViolated("m_I (n-2) = " + std::to_string(lhs) + " but triples sum to " +
                               std::to_string(triple_sum));
    const long long diff = lhs - static_cast<long long>(report.count2);
    if (diff < 0 || diff % 2 != 0)
        throw IdentityViolated("m_I (n-2) - #c^-1(2) = " + std::to_string(diff) + " is not a nonnegative even number");
    report.big_m = diff / 2;
    if (report.big_m != by_minus[2] + by_minus[3])
        throw IdentityViolated("M = " + std::to_string(report.big_m) + " but M_2 + M_3 = " +
                               std::to_string(by_minus[2] + by_minus[3]));
    if (report.count2 != subarrangement_invariant(g).count2)
        throw IdentityViolated("triple counts disagree with the subarrangement invariant");
    return report;
}

ParityReport parity_identity_check(const std::vector<BitangentSection>& sections) {
    if (sections.size() < 3) throw std::invalid_argument("parity identity needs at least 3 lines");
    return parity_identity_check(gram_matrix(sections));
}

// ---------------------------------------------------------------------------

PairTable PairTable::build(const QuarticCurve& curve, const std::vector<BitangentSection>& sections) {
    PairTable table;
    const std::size_t n = sections.size();
    table.size_ = n;
    table.kinds_.assign(n * n, std::nullopt);
    table.identical_.assign(n * n, false);
    table.on_curve_.assign(n * n, false);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& li = sections[i].line;
            const auto& lj = sections[j].line;
            if (li.same_line(lj)) {
                table.identical_[i * n + j] = table.identical_[j * n + i] = true;
                continue;
            }
            if (zariski::meets_on_curve(curve, li, lj)) {
                table.on_curve_[i * n + j] = table.on_curve_[j * n + i] = true;
                continue;
            }
            const MeetKind kind = intersection_datum(sections[i], sections[j], i, j).kind;
            table.kinds_[i * n + j] = table.kinds_[j * n + i] = kind;
        }
    for_each_combination(n, 3, [&](const std::vector<std::size_t>& t) {
        const auto& a = sections[t[0]].line;
        const auto& b = sections[t[1]].line;
        const auto& c = sections[t[2]].line;
        if (a.same_line(b) || a.same_line(c) || b.same_line(c)) return;
        if (zariski::concurrent(a, b, c)) table.concurrent_.push_back({t[0], t[1], t[2]});
    });
    return table;
}

bool PairTable::concurrent(std::size_t i, std::size_t j, std::size_t k) const {
    std::array<std::size_t, 3> key{i, j, k};
    std::sort(key.begin(), key.end());
    return std::binary_search(concurrent_.begin(), concurrent_.end(), key);
}

std::optional<std::string> PairTable::degeneracy(const std::vector<std::size_t>& subset) const {
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            const std::size_t i = subset[a], j = subset[b];
            if (identical(i, j))
                return "identical lines at positions " + std::to_string(i + 1) + " and " + std::to_string(j + 1);
            if (meets_on_curve(i, j))
                return "lines at positions " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                       " meet on the curve";
        }
    std::optional<std::string> reason;
    if (!concurrent_.empty())
        for_each_combination(subset.size(), 3, [&](const std::vector<std::size_t>& t) {
            if (!reason && concurrent(subset[t[0]], subset[t[1]], subset[t[2]]))
                reason = "lines at positions " + std::to_string(subset[t[0]] + 1) + ", " +
                         std::to_string(subset[t[1]] + 1) + ", " + std::to_string(subset[t[2]] + 1) +
                         " are concurrent";
        });
    return reason;
}

SignMatrix PairTable::sign_matrix(const std::vector<std::size_t>& subset) const {
    const std::size_t k = subset.size();
    std::vector<int> entries(k * k, 3);
    std::vector<std::size_t> labels(k);
    for (std::size_t r = 0; r < k; ++r) {
        labels[r] = subset[r] + 1;
        for (std::size_t c = r + 1; c < k; ++c) {
            const auto& kind = this->kind(subset[r], subset[c]);
            if (!kind) throw DomainError("pair at positions " + std::to_string(subset[r] + 1) + ", " +
                                         std::to_string(subset[c] + 1) + " has no defined pairing");
            entries[r * k + c] = entries[c * k + r] = sign_of(*kind);
        }
    }
    return SignMatrix(std::move(labels), std::move(entries));
}

std::size_t PairTable::lift_components(const std::vector<std::size_t>& subset) const {
    LiftGraph graph(subset.size());
    for (std::size_t r = 0; r < subset.size(); ++r)
        for (std::size_t c = r + 1; c < subset.size(); ++c) {
            const auto& kind = this->kind(subset[r], subset[c]);
            if (!kind) throw DomainError("pair at positions " + std::to_string(subset[r] + 1) + ", " +
                                         std::to_string(subset[c] + 1) + " has no defined intersection datum");
            graph.add_pair(r, c, *kind);
        }
    return graph.components();
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(result);
}

ClassifyResult classify_subsets(const PairTable& table, std::size_t n, std::uint64_t limit) {
    if (n < 3) throw std::invalid_argument("classification needs subsets of size >= 3");
    const std::uint64_t total = binomial(table.size(), n);
    if (total > limit)
        throw LimitExceeded("C(" + std::to_string(table.size()) + ", " + std::to_string(n) + ") = " +
                            std::to_string(total) + " subsets exceeds the limit " + std::to_string(limit));
    ClassifyResult result;
    result.subset_size = n;
    for_each_combination(table.size(), n, [&](const std::vector<std::size_t>& subset) {
        ++result.examined;
        if (auto reason = table.degeneracy(subset)) {
            result.excluded.push_back({subset, *reason});
            return;
        }
        result.classes[subarrangement_invariant(table.sign_matrix(subset))].push_back(subset);
    });
    return result;
}

ClassifyResult classify_subsets(const QuarticCurve& curve, const std::vector<BitangentSection>& sections,
                                std::size_t n, std::uint64_t limit) {
    return classify_subsets(PairTable::build(curve, sections), n, limit);
}

}  // namespace zariski
