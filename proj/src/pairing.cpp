#include "zariski/pairing.hpp"

#include <sstream>

#include "zariski/errors.hpp"

namespace zariski {

IntersectionDatum intersection_datum(const BitangentSection& si, const BitangentSection& sj, std::size_t i,
                                     std::size_t j) {
    if (si.line.same_line(sj.line))
        throw std::invalid_argument("intersection datum needs two distinct lines (" + si.line.name + ", " +
                                    sj.line.name + ")");
    IntersectionDatum datum{i, j, std::nullopt, MeetKind::SamePoint};
    if (auto point = intersection_point(si.line, sj.line)) {
        const FieldElement& t0 = point->first;
        const FieldElement yi = si.y_at(t0);
        const FieldElement yj = sj.y_at(t0);
        if (yi.is_zero() && yj.is_zero())
            throw OnBranchLocus("lines " + si.line.name + " and " + sj.line.name + " meet on the branch curve");
        datum.t0 = t0;
        if (yi == yj)
            datum.kind = MeetKind::SamePoint;
        else if (yi == -yj)
            datum.kind = MeetKind::OppositePoint;
        else
            throw Inconsistent("sections over " + si.line.name + " and " + sj.line.name +
                               " disagree up to sign at their crossing");
        return datum;
    }
    if (si.c == sj.c)
        datum.kind = MeetKind::SamePoint;
    else if (si.c == -sj.c)
        datum.kind = MeetKind::OppositePoint;
    else
        throw Inconsistent("parallel lines " + si.line.name + " and " + sj.line.name +
                           " have leading section coefficients that differ beyond sign");
    return datum;
}

Rational height_pairing(const BitangentSection& si, const BitangentSection& sj) {
    if (si.line.same_line(sj.line)) {
        if (si.y() == sj.y()) return Rational(3, 2);
        if (si.y() == -sj.y()) return Rational(-3, 2);
        throw Inconsistent("two different sections over the line " + si.line.name);
    }
    // 1 + s_i.O + s_j.O - s_i.s_j - 1/2 with s.O = 0 and one shared component at infinity.
    const int intersection = intersection_datum(si, sj).kind == MeetKind::SamePoint ? 1 : 0;
    return Rational(1, 2) - intersection;
}

SignMatrix::SignMatrix(std::vector<std::size_t> indices, std::vector<int> entries)
    : indices_(std::move(indices)), entries_(std::move(entries)) {
    const std::size_t k = indices_.size();
    if (entries_.size() != k * k) throw MalformedMatrix("sign matrix entry count does not match its size");
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) {
            const int v = at(r, c);
            if (r == c ? v != 3 : (v != 1 && v != -1))
                throw MalformedMatrix("sign matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                                      ") = " + std::to_string(v));
            if (v != at(c, r)) throw MalformedMatrix("sign matrix is not symmetric");
        }
}

SignMatrix SignMatrix::from_upper(const std::vector<int>& upper) {
    std::size_t k = 1;
    while (k * (k - 1) / 2 < upper.size()) ++k;
    if (k * (k - 1) / 2 != upper.size()) throw MalformedMatrix("upper-diagonal length is not triangular");
    std::vector<int> entries(k * k, 3);
    std::size_t pos = 0;
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = r + 1; c < k; ++c) {
            entries[r * k + c] = upper[pos];
            entries[c * k + r] = upper[pos];
            ++pos;
        }
    std::vector<std::size_t> indices(k);
    for (std::size_t r = 0; r < k; ++r) indices[r] = r + 1;
    return SignMatrix(std::move(indices), std::move(entries));
}

std::size_t SignMatrix::minus_count() const noexcept {
    std::size_t m = 0;
    for (std::size_t r = 0; r < size(); ++r)
        for (std::size_t c = r + 1; c < size(); ++c)
            if (at(r, c) == -1) ++m;
    return m;
}

SignMatrix SignMatrix::principal(const std::vector<std::size_t>& positions) const {
    const std::size_t k = positions.size();
    std::vector<std::size_t> idx(k);
    std::vector<int> entries(k * k);
    for (std::size_t r = 0; r < k; ++r) {
        idx[r] = indices_.at(positions[r]);
        for (std::size_t c = 0; c < k; ++c) entries[r * k + c] = at(positions[r], positions[c]);
    }
    return SignMatrix(std::move(idx), std::move(entries));
}

std::string SignMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < size(); ++r) {
        os << (r ? ",[" : "[");
        for (std::size_t c = 0; c < size(); ++c) os << (c ? "," : "") << at(r, c);
        os << "]";
    }
    os << "]";
    return os.str();
}

SignMatrix gram_matrix(const std::vector<BitangentSection>& sections, std::vector<std::size_t> indices) {
    const std::size_t k = sections.size();
    if (k < 2) throw std::invalid_argument("gram matrix needs at least two sections");
    if (indices.empty())
        for (std::size_t r = 0; r < k; ++r) indices.push_back(r + 1);
    if (indices.size() != k) throw std::invalid_argument("index labels do not match the section count");
    std::vector<int> entries(k * k, 3);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = r + 1; c < k; ++c) {
            const int s = sign_of(intersection_datum(sections[r], sections[c], r, c).kind);
            entries[r * k + c] = s;
            entries[c * k + r] = s;
        }
    return SignMatrix(std::move(indices), std::move(entries));
}

}  // namespace zariski
