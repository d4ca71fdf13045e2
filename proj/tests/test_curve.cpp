#include "doctest.h"

#include <set>

#include "support.hpp"
#include "zariski/curve.hpp"
#include "zariski/errors.hpp"
#include "zariski/io.hpp"

using namespace zariski;

namespace {

const io::Dataset& klein() {
    static const io::Dataset d = io::builtin_klein();
    return d;
}

Poly rpoly(const FieldPtr& f, std::vector<long long> c) {
    std::vector<Rational> q;
    for (auto v : c) q.emplace_back(static_cast<long>(v));
    return Poly::from_rationals(f, q);
}

FieldElement num(const FieldPtr& f, long v) { return FieldElement::rational(f, v); }

}  // namespace

TEST_CASE("curve construction enforces degree bounds") {
    const auto f = CyclotomicField::make(7);
    CHECK_NOTHROW(QuarticCurve(rpoly(f, {0, 0, 1}), rpoly(f, {0, 0, 0, 1}), rpoly(f, {0, 0, 0, 0, 1})));
    CHECK_THROWS_AS(QuarticCurve(rpoly(f, {0, 0, 0, 1}), Poly{f}, Poly{f}), InvalidCurve);
    CHECK_THROWS_AS(QuarticCurve(Poly{f}, rpoly(f, {0, 0, 0, 0, 1}), Poly{f}), InvalidCurve);
    CHECK_THROWS_AS(QuarticCurve(Poly{f}, Poly{f}, rpoly(f, {0, 0, 0, 0, 0, 1})), InvalidCurve);
}

TEST_CASE("restriction to L1 is minus a square") {
    const auto& d = klein();
    const auto f = d.field;
    const auto& l1 = d.lines[0].line;
    CHECK(l1.a == -FieldElement::one(f));
    CHECK(l1.b == -FieldElement::one(f));
    const Poly g = rpoly(f, {1, 1, 1});
    CHECK(restrict_to_line(d.curve, l1) == -(g * g));
    const auto sq = square_part(restrict_to_line(d.curve, l1));
    REQUIRE(sq.has_value());
    CHECK(*sq == g);
}

TEST_CASE("restriction agrees with direct numeric evaluation of F") {
    const auto& d = klein();
    const testing::KleinNumeric kn;
    for (const auto& entry : d.lines) {
        const Poly r = restrict_to_line(d.curve, entry.line);
        const auto a = testing::evaluate(entry.line.a, 1);
        const auto b = testing::evaluate(entry.line.b, 1);
        for (double t : {-1.5, 0.25, 2.0}) {
            testing::Cd acc = 0;
            for (std::size_t k = r.coeffs().size(); k-- > 0;) acc = acc * t + testing::evaluate(r.coeffs()[k], 1);
            CHECK(std::abs(acc - testing::KleinNumeric::F(t, a * t + b)) < 1e-8);
        }
    }
}

TEST_CASE("the 28 built-in lines are the closed-form bitangents") {
    const auto& d = klein();
    const testing::KleinNumeric kn;
    REQUIRE(d.lines.size() == 28);
    std::set<std::pair<int, int>> seen;
    for (const auto& entry : d.lines) {
        const auto a = testing::evaluate(entry.line.a, 1);
        const auto b = testing::evaluate(entry.line.b, 1);
        int hits = 0;
        for (int fam = 0; fam < 4; ++fam)
            for (int j = 0; j < 7; ++j) {
                const auto [ea, eb] = kn.line(fam, j);
                if (std::abs(ea - a) < 1e-10 && std::abs(eb - b) < 1e-10) {
                    ++hits;
                    seen.insert({fam, j});
                }
            }
        CHECK(hits == 1);
    }
    CHECK(seen.size() == 28);
    for (int k = 1; k <= 7; ++k) {
        const auto [ea, eb] = kn.printed_line(k);
        CHECK(std::abs(testing::evaluate(d.lines[k - 1].line.a, 1) - ea) < 1e-10);
        CHECK(std::abs(testing::evaluate(d.lines[k - 1].line.b, 1) - eb) < 1e-10);
    }
}

TEST_CASE("stored sections are the printed ones and verify exactly") {
    const auto& d = klein();
    const testing::KleinNumeric kn;
    for (int k = 1; k <= 7; ++k) {
        const auto& entry = d.lines[k - 1];
        REQUIRE(entry.section.has_value());
        CHECK(verify_section(d.curve, *entry.section));
        for (double t : {-0.7, 0.3, 1.9}) {
            const auto expect = kn.y(k, t);
            CHECK(std::abs(testing::evaluate(entry.section->y_at(FieldElement::rational(d.field, Rational(t))), 1) -
                           expect) < 1e-9);
        }
    }
    for (std::size_t n = 7; n < 28; ++n) CHECK_FALSE(d.lines[n].section.has_value());
}

TEST_CASE("every built-in line is a bitangent and derives a section") {
    const auto& d = klein();
    for (const auto& entry : d.lines) {
        INFO(entry.line.name);
        CHECK(verify_bitangent(d.curve, entry.line));
        CHECK_FALSE(is_hyperflex(d.curve, entry.line));
        const auto s = derive_section(d.curve, entry.line);
        CHECK(verify_section(d.curve, s));
        CHECK(s.y() * s.y() == restrict_to_line(d.curve, entry.line));
        if (entry.section) CHECK((s.y() == entry.section->y() || s.y() == -entry.section->y()));
    }
}

TEST_CASE("non-bitangents, hyperflexes and missing roots are rejected") {
    const auto f = CyclotomicField::make(7);
    const auto zero = FieldElement::zero(f);
    const BitangentLine axis{"axis", zero, zero};  // x = 0, F|_L = r

    SUBCASE("generic line") {
        const auto& d = klein();
        const BitangentLine l{"m", FieldElement::one(d.field), num(d.field, 5)};
        CHECK_FALSE(verify_bitangent(d.curve, l));
        CHECK_THROWS_AS(derive_section(d.curve, l), NotABitangent);
    }
    SUBCASE("four-fold contact") {
        const QuarticCurve c(Poly{f}, rpoly(f, {0, 1}), rpoly(f, {0, 0, 0, 0, 1}));
        CHECK(is_hyperflex(c, axis));
        CHECK_FALSE(verify_bitangent(c, axis));
        CHECK_THROWS_AS(derive_section(c, axis), HyperflexLine);
        const QuarticCurve shifted(Poly{f}, Poly{f}, rpoly(f, {1, -4, 6, -4, 1}));  // (t-1)^4
        CHECK(is_hyperflex(shifted, axis));
    }
    SUBCASE("leading coefficient without a root") {
        const QuarticCurve c(Poly{f}, Poly{f}, rpoly(f, {2, 0, 4, 0, 2}));  // 2 (t^2 + 1)^2
        CHECK(verify_bitangent(c, axis));
        CHECK_THROWS_AS(derive_section(c, axis), NoSquareRootInField);
        const QuarticCurve ok(Poly{f}, Poly{f}, rpoly(f, {-7, 0, -14, 0, -7}));  // -7 (t^2 + 1)^2
        const auto s = derive_section(ok, axis);
        CHECK(s.c * s.c == num(f, -7));
    }
    SUBCASE("degree drops") {
        const QuarticCurve c(Poly{f}, Poly{f}, rpoly(f, {1, 0, 1}));
        CHECK_FALSE(verify_bitangent(c, axis));
        CHECK_THROWS_AS(derive_section(c, axis), NotABitangent);
    }
    SUBCASE("tampered section") {
        const auto& d = klein();
        auto s = *d.lines[1].section;
        CHECK(verify_section(d.curve, s));
        CHECK(verify_section(d.curve, s.negated()));
        s.e += FieldElement::one(d.field);
        CHECK_FALSE(verify_section(d.curve, s));
    }
}

TEST_CASE("intersections and concurrency") {
    const auto f = CyclotomicField::make(7);
    const auto one = FieldElement::one(f);
    const BitangentLine l1{"a", one, FieldElement::zero(f)};       // x = t
    const BitangentLine l2{"b", num(f, 2), num(f, -1)};            // x = 2t - 1
    const BitangentLine l3{"c", num(f, -1), num(f, 2)};            // x = -t + 2, through (1, 1)
    const BitangentLine l4{"d", num(f, 3), one};                   // x = 3t + 1
    const auto p = intersection_point(l1, l2);
    REQUIRE(p.has_value());
    CHECK(p->first == one);
    CHECK(p->second == one);
    CHECK(concurrent(l1, l2, l3));
    CHECK_FALSE(concurrent(l1, l2, l4));
    const BitangentLine m1{"p", one, one}, m2{"q", one, num(f, 2)}, m3{"r", one, num(f, 3)};
    CHECK_FALSE(intersection_point(m1, m2).has_value());
    CHECK(concurrent(m1, m2, m3));  // common point at infinity
    CHECK_FALSE(concurrent(m1, m2, l4));
}

TEST_CASE("lines meeting on the curve") {
    const auto f = CyclotomicField::make(7);
    // x^3 + t: the origin lies on the curve.
    const QuarticCurve c(Poly{f}, Poly{f}, rpoly(f, {0, 1}));
    const BitangentLine l1{"a", FieldElement::one(f), FieldElement::zero(f)};
    const BitangentLine l2{"b", num(f, 2), FieldElement::zero(f)};
    const BitangentLine l3{"c", num(f, 2), FieldElement::one(f)};
    CHECK(meets_on_curve(c, l1, l2));
    CHECK_FALSE(meets_on_curve(c, l1, l3));
    // Parallel lines meet at infinity, which lies on the curve iff at_infinity(a) = 0.
    const QuarticCurve k = klein().curve;
    CHECK(k.at_infinity(FieldElement::zero(klein().field)).is_zero());
    CHECK(k.at_infinity(FieldElement::one(klein().field)).is_one());
}

TEST_CASE("sanity report of the Klein arrangement") {
    const auto& d = klein();
    std::vector<BitangentLine> lines;
    for (const auto& e : d.lines) lines.push_back(e.line);

    const std::vector<BitangentLine> seven(lines.begin(), lines.begin() + 7);
    CHECK(curve_sanity(d.curve, seven).clean());

    const auto report = curve_sanity(d.curve, lines);
    CHECK(report.identical_pairs.empty());
    CHECK(report.pairs_meeting_on_curve.empty());
    CHECK(report.hyperflex_lines.empty());

    // Count concurrent triples independently from the closed-form numerics.
    const testing::KleinNumeric kn;
    std::vector<std::pair<testing::Cd, testing::Cd>> nl;
    for (int fam = 0; fam < 4; ++fam)
        for (int j = 0; j < 7; ++j) nl.push_back(kn.line(fam, j));
    std::size_t expect = 0;
    for (std::size_t i = 0; i < 28; ++i)
        for (std::size_t j = i + 1; j < 28; ++j)
            for (std::size_t k = j + 1; k < 28; ++k) {
                const auto det = (nl[j].first - nl[i].first) * (nl[k].second - nl[i].second) -
                                 (nl[k].first - nl[i].first) * (nl[j].second - nl[i].second);
                if (std::abs(det) < 1e-9) ++expect;
            }
    CHECK(report.concurrent_triples.size() == expect);

    SUBCASE("fabricated degeneracies are reported") {
        auto extra = seven;
        extra.push_back(seven[2]);
        const auto dup = curve_sanity(d.curve, extra);
        REQUIRE(dup.identical_pairs.size() == 1);
        CHECK(dup.identical_pairs[0] == std::array<std::size_t, 2>{2, 7});

        // A line through the crossing of L1 and L2.
        const auto p = intersection_point(seven[0], seven[1]);
        REQUIRE(p.has_value());
        const auto slope = FieldElement::rational(d.field, 5);
        auto through = seven;
        through.push_back({"X", slope, p->second - slope * p->first});
        const auto conc = curve_sanity(d.curve, through);
        CHECK_FALSE(conc.clean());
        REQUIRE(conc.concurrent_triples.size() == 1);
        CHECK(conc.concurrent_triples[0] == std::array<std::size_t, 3>{0, 1, 7});
    }
}
