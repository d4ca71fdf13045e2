#include "zariski/curve.hpp"

#include "zariski/errors.hpp"

namespace zariski {

QuarticCurve::QuarticCurve(Poly p, Poly q, Poly r) : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)) {
    const int n = p_.field()->order();
    if (q_.field()->order() != n) throw FieldMismatch(n, q_.field()->order());
    if (r_.field()->order() != n) throw FieldMismatch(n, r_.field()->order());
    if (p_.degree() > 2) throw InvalidCurve("deg p must be <= 2, got " + std::to_string(p_.degree()));
    if (q_.degree() > 3) throw InvalidCurve("deg q must be <= 3, got " + std::to_string(q_.degree()));
    if (r_.degree() > 4) throw InvalidCurve("deg r must be <= 4, got " + std::to_string(r_.degree()));
}

FieldElement QuarticCurve::evaluate(const FieldElement& t, const FieldElement& x) const {
    return ((x + p_.evaluate(t)) * x + q_.evaluate(t)) * x + r_.evaluate(t);
}

Poly QuarticCurve::substitute(const Poly& x) const {
    // Horner in x: ((x + p) x + q) x + r
    return ((x + p_) * x + q_) * x + r_;
}

FieldElement QuarticCurve::at_infinity(const FieldElement& a) const {
    return (p_.coeff(2) * a + q_.coeff(3)) * a + r_.coeff(4);
}

SignedSection::SignedSection(BitangentSection section, int sign_) : base(std::move(section)), sign(sign_) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("section sign must be +1 or -1");
}

FieldElement SignedSection::y_at(const FieldElement& t) const {
    const FieldElement y = base.y_at(t);
    return sign > 0 ? y : -y;
}

Poly restrict_to_line(const QuarticCurve& curve, const BitangentLine& line) {
    line.a.require_same_field(line.b);
    if (curve.field()->order() != line.a.field()->order())
        throw FieldMismatch(curve.field()->order(), line.a.field()->order());
    return curve.substitute(line.as_poly());
}

std::optional<Poly> square_part(const Poly& restricted) {
    if (restricted.degree() != 4) return std::nullopt;
    Poly g = gcd(restricted, restricted.derivative());
    if (g.degree() != 2) return std::nullopt;
    if (gcd(g, g.derivative()).degree() != 0) return std::nullopt;
    if (g * g.scaled(restricted.leading()) != restricted) return std::nullopt;
    return g;
}

bool verify_bitangent(const QuarticCurve& curve, const BitangentLine& line) {
    return square_part(restrict_to_line(curve, line)).has_value();
}

bool verify_section(const QuarticCurve& curve, const BitangentSection& section) {
    if (section.c.is_zero()) return false;
    const Poly y = section.y();
    return y * y == restrict_to_line(curve, section.line);
}

bool is_hyperflex(const QuarticCurve& curve, const BitangentLine& line) {
    const Poly restricted = restrict_to_line(curve, line);
    if (restricted.degree() != 4) return false;
    const FieldElement& lead = restricted.leading();
    // alpha = -s3 / (4 s4)
    const FieldElement alpha = -(restricted.coeff(3) / lead.scaled(Rational(4)));
    const Poly linear = Poly::linear(FieldElement::one(curve.field()), -alpha);
    const Poly square = linear * linear;
    return (square * square).scaled(lead) == restricted;
}

BitangentSection derive_section(const QuarticCurve& curve, const BitangentLine& line, const SqrtOptions& options) {
    const Poly restricted = restrict_to_line(curve, line);
    const auto g = square_part(restricted);
    if (!g) {
        if (is_hyperflex(curve, line))
            throw HyperflexLine("line " + line.name + " has four-fold contact with the curve");
        throw NotABitangent("line " + line.name + " is not a bitangent");
    }
    const auto scale = sqrt_in_field(restricted.leading(), options);
    if (!scale)
        throw NoSquareRootInField("leading coefficient of F restricted to " + line.name +
                                  " has no square root in Q(zeta_" + std::to_string(curve.field()->order()) + ")");
    const Poly y = g->scaled(*scale);
    return {line, y.coeff(2), y.coeff(1), y.coeff(0)};
}

std::optional<std::pair<FieldElement, FieldElement>> intersection_point(const BitangentLine& lhs,
                                                                         const BitangentLine& rhs) {
    const FieldElement da = lhs.a - rhs.a;
    if (da.is_zero()) return std::nullopt;
    const FieldElement t0 = (rhs.b - lhs.b) / da;
    return std::make_pair(t0, lhs.a * t0 + lhs.b);
}

bool concurrent(const BitangentLine& l1, const BitangentLine& l2, const BitangentLine& l3) {
    const FieldElement det = (l1.a - l2.a) * (l1.b - l3.b) - (l1.b - l2.b) * (l1.a - l3.a);
    return det.is_zero();
}

bool meets_on_curve(const QuarticCurve& curve, const BitangentLine& lhs, const BitangentLine& rhs) {
    if (auto point = intersection_point(lhs, rhs)) return curve.evaluate(point->first, point->second).is_zero();
    // Parallel lines meet at [T:X:Z] = [1:a:0].
    return curve.at_infinity(lhs.a).is_zero();
}

SanityReport curve_sanity(const QuarticCurve& curve, const std::vector<BitangentLine>& lines) {
    SanityReport report;
    const std::size_t n = lines.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (is_hyperflex(curve, lines[i])) report.hyperflex_lines.push_back(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (lines[i].same_line(lines[j])) {
                report.identical_pairs.push_back({i, j});
                continue;
            }
            if (lines[i].a == lines[j].a) report.parallel_pairs.push_back({i, j});
            if (meets_on_curve(curve, lines[i], lines[j])) report.pairs_meeting_on_curve.push_back({i, j});
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                if (lines[i].same_line(lines[j]) || lines[i].same_line(lines[k]) || lines[j].same_line(lines[k]))
                    continue;
                if (concurrent(lines[i], lines[j], lines[k])) report.concurrent_triples.push_back({i, j, k});
            }
    return report;
}

}  // namespace zariski
