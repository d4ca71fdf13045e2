#ifndef ZARISKI_PAIRING_HPP
#define ZARISKI_PAIRING_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zariski/curve.hpp"

namespace zariski {

/// How the lifts of two distinct bitangents meet.
///   SamePoint:     s_{P_i} . s_{P_j} = 1   (pairing -1/2)
///   OppositePoint: s_{P_i} . s_{-P_j} = 1  (pairing +1/2)
enum class MeetKind { SamePoint, OppositePoint };

struct IntersectionDatum {
    std::size_t i = 0;
    std::size_t j = 0;
    /// Parameter of the intersection point; nullopt when the lines are
    /// parallel and meet over t = infinity.
    std::optional<FieldElement> t0;
    MeetKind kind = MeetKind::SamePoint;
};

/// Compares y_i and y_j where the two lines cross.
///
/// Parallel lines are compared through the leading coefficients c_i, c_j in
/// the chart u = 1/t, x' = x/t, y' = y/t^2. Throws std::invalid_argument for
/// identical lines, OnBranchLocus when both sections vanish at the crossing,
/// and Inconsistent when y_i(t0) is neither y_j(t0) nor -y_j(t0).
IntersectionDatum intersection_datum(const BitangentSection& si, const BitangentSection& sj, std::size_t i = 0,
                                     std::size_t j = 1);

/// Height pairing <P_i, P_j> specialised to bitangent sections:
/// 3/2 for equal points, -3/2 for P and -P, otherwise 1/2 - (s_i . s_j).
Rational height_pairing(const BitangentSection& si, const BitangentSection& sj);

/// Symmetric matrix of twice the height pairing: diagonal 3, off-diagonal +-1.
class SignMatrix {
public:
    SignMatrix() = default;
    /// Validates shape, symmetry and entry range; throws MalformedMatrix.
    SignMatrix(std::vector<std::size_t> indices, std::vector<int> entries);

    /// Matrix with the given upper-diagonal signs, read row by row.
    static SignMatrix from_upper(const std::vector<int>& upper);

    std::size_t size() const noexcept { return indices_.size(); }
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    int at(std::size_t row, std::size_t col) const { return entries_[row * size() + col]; }
    const std::vector<int>& entries() const noexcept { return entries_; }

    /// Number of -1 entries strictly above the diagonal (m_I).
    std::size_t minus_count() const noexcept;
    /// Principal submatrix on the given positions (not dataset indices).
    SignMatrix principal(const std::vector<std::size_t>& positions) const;

    friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

    std::string to_string() const;

private:
    std::vector<std::size_t> indices_;
    std::vector<int> entries_;
};

/// Off-diagonal sign 2<P_i,P_j> from a datum.
inline int sign_of(MeetKind kind) noexcept { return kind == MeetKind::SamePoint ? -1 : 1; }

/// Gram matrix G_I for k >= 2 sections on pairwise distinct lines.
/// `indices` label rows (defaults to 1..k).
SignMatrix gram_matrix(const std::vector<BitangentSection>& sections, std::vector<std::size_t> indices = {});

}  // namespace zariski

#endif  // ZARISKI_PAIRING_HPP
