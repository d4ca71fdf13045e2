#ifndef ZARISKI_CURVE_HPP
#define ZARISKI_CURVE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "zariski/poly.hpp"

namespace zariski {

/// Affine quartic F(t, x) = x^3 + p(t) x^2 + q(t) x + r(t) with
/// deg p <= 2, deg q <= 3, deg r <= 4 (the homogenisation
/// Z X^3 + p(T,Z) X^2 + q(T,Z) X + r(T,Z) is then a quartic).
class QuarticCurve {
public:
    /// Throws InvalidCurve when a degree bound is violated.
    QuarticCurve(Poly p, Poly q, Poly r);

    const FieldPtr& field() const noexcept { return p_.field(); }
    const Poly& p() const noexcept { return p_; }
    const Poly& q() const noexcept { return q_; }
    const Poly& r() const noexcept { return r_; }

    FieldElement evaluate(const FieldElement& t, const FieldElement& x) const;
    /// F(t, x(t)) for a polynomial x(t).
    Poly substitute(const Poly& x) const;
    /// Degree-4 part of F at infinity along the direction x = a t:
    /// p_2 a^2 + q_3 a + r_4 (the homogeneous form at Z = 0, T = 1, X = a).
    FieldElement at_infinity(const FieldElement& a) const;

    friend bool operator==(const QuarticCurve&, const QuarticCurve&) = default;

private:
    Poly p_;
    Poly q_;
    Poly r_;
};

/// The line x = a t + b.
struct BitangentLine {
    std::string name;
    FieldElement a;
    FieldElement b;

    Poly as_poly() const { return Poly::linear(a, b); }
    /// Same geometric line (names are ignored).
    bool same_line(const BitangentLine& other) const { return a == other.a && b == other.b; }

    friend bool operator==(const BitangentLine&, const BitangentLine&) = default;
};

/// Section y = c t^2 + d t + e over a bitangent, with y^2 = F(t, a t + b).
/// It represents the rational point P = (x(t), y(t)).
struct BitangentSection {
    BitangentLine line;
    FieldElement c;
    FieldElement d;
    FieldElement e;

    Poly y() const { return Poly::quadratic(c, d, e); }
    FieldElement y_at(const FieldElement& t) const { return (c * t + d) * t + e; }
    /// The section of -P = (x, -y).
    BitangentSection negated() const { return {line, -c, -d, -e}; }

    friend bool operator==(const BitangentSection&, const BitangentSection&) = default;
};

/// One of the two lifts s_P (sign = +1) or s_{-P} (sign = -1).
struct SignedSection {
    BitangentSection base;
    int sign = 1;

    SignedSection(BitangentSection section, int sign_);
    FieldElement y_at(const FieldElement& t) const;
};

/// F restricted to the line: F(t, a t + b). Throws FieldMismatch.
Poly restrict_to_line(const QuarticCurve& curve, const BitangentLine& line);

/// Monic g with F|_L = lead * g^2, deg g = 2 and g squarefree, if one exists.
std::optional<Poly> square_part(const Poly& restricted);

/// True iff F|_L is a nonzero constant times the square of a squarefree quadratic.
bool verify_bitangent(const QuarticCurve& curve, const BitangentLine& line);

/// True iff (c t^2 + d t + e)^2 = F|_L exactly and c != 0.
bool verify_section(const QuarticCurve& curve, const BitangentSection& section);

/// Section over a bitangent: sqrt(lead(F|_L)) * gcd(F|_L, F|_L').
/// Throws NotABitangent, HyperflexLine or NoSquareRootInField.
BitangentSection derive_section(const QuarticCurve& curve, const BitangentLine& line,
                                const SqrtOptions& options = {});

/// Intersection of two non-parallel lines as (t0, x0); nullopt when parallel.
std::optional<std::pair<FieldElement, FieldElement>> intersection_point(const BitangentLine& lhs,
                                                                         const BitangentLine& rhs);

/// Whether three lines of the form x = a t + b pass through one point
/// (including the point at infinity when all three are parallel).
bool concurrent(const BitangentLine& l1, const BitangentLine& l2, const BitangentLine& l3);

/// Whether the two lines meet at a point of the curve.
bool meets_on_curve(const QuarticCurve& curve, const BitangentLine& lhs, const BitangentLine& rhs);

/// F|_L = lead * (t - alpha)^4: four-fold contact, unsupported.
bool is_hyperflex(const QuarticCurve& curve, const BitangentLine& line);

struct SanityReport {
    std::vector<std::array<std::size_t, 2>> identical_pairs;
    std::vector<std::array<std::size_t, 3>> concurrent_triples;
    std::vector<std::array<std::size_t, 2>> pairs_meeting_on_curve;
    std::vector<std::size_t> hyperflex_lines;
    std::vector<std::array<std::size_t, 2>> parallel_pairs;  // informational

    bool clean() const {
        return identical_pairs.empty() && concurrent_triples.empty() && pairs_meeting_on_curve.empty() &&
               hyperflex_lines.empty();
    }
};

/// Combinatorial diagnostics for a line arrangement; indices refer to `lines`.
SanityReport curve_sanity(const QuarticCurve& curve, const std::vector<BitangentLine>& lines);

}  // namespace zariski

#endif  // ZARISKI_CURVE_HPP
