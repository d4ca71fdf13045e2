#include "zariski/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <tuple>

#include "zariski/errors.hpp"
#include "zariski/topology.hpp"

namespace zariski::oracle {

namespace {

template <typename R>
using Cx = std::complex<R>;

template <typename R>
struct CurveCoeffs {
    std::vector<Cx<R>> p, q, r;
};

template <typename R>
Cx<R> embed_as(const FieldElement& value, int embedding, unsigned bits) {
    const BigComplex z = embed(value, embedding, bits);
    return {z.re.convert_to<R>(), z.im.convert_to<R>()};
}

template <typename R>
std::vector<Cx<R>> embed_poly(const Poly& poly, int embedding, unsigned bits) {
    std::vector<Cx<R>> out;
    for (const auto& c : poly.coeffs()) out.push_back(embed_as<R>(c, embedding, bits));
    return out;
}

template <typename R>
CurveCoeffs<R> embed_coeffs(const QuarticCurve& curve, int embedding, unsigned bits) {
    return {embed_poly<R>(curve.p(), embedding, bits), embed_poly<R>(curve.q(), embedding, bits),
            embed_poly<R>(curve.r(), embedding, bits)};
}

template <typename T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<T> out(a.size() + b.size() - 1, T{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

template <typename T>
std::vector<T> poly_add(std::vector<T> a, const std::vector<T>& b) {
    if (a.size() < b.size()) a.resize(b.size(), T{});
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
    return a;
}

// F(t, x(t)) for x = a t + b; T is a complex scalar or a jet.
template <typename T>
std::array<T, 5> restrict_generic(const std::vector<T>& p, const std::vector<T>& q, const std::vector<T>& r,
                                  const T& a, const T& b) {
    const std::vector<T> x{b, a};
    std::vector<T> acc = poly_add(x, p);
    acc = poly_add(poly_mul(acc, x), q);
    acc = poly_add(poly_mul(acc, x), r);
    std::array<T, 5> s{};
    for (std::size_t k = 0; k < acc.size() && k < 5; ++k) s[k] = acc[k];
    return s;
}

// Value with first derivatives in a and b.
struct Jet {
    Complex v{}, da{}, db{};

    friend Jet operator+(const Jet& x, const Jet& y) { return {x.v + y.v, x.da + y.da, x.db + y.db}; }
    friend Jet operator-(const Jet& x, const Jet& y) { return {x.v - y.v, x.da - y.da, x.db - y.db}; }
    friend Jet operator*(const Jet& x, const Jet& y) {
        return {x.v * y.v, x.da * y.v + x.v * y.da, x.db * y.v + x.v * y.db};
    }
    friend Jet operator*(double c, const Jet& x) { return {c * x.v, c * x.da, c * x.db}; }
    friend Jet operator/(const Jet& x, const Jet& y) {
        const Complex inv = 1.0 / y.v;
        const Complex v = x.v * inv;
        return {v, (x.da - v * y.da) * inv, (x.db - v * y.db) * inv};
    }
};

std::vector<Jet> constant_jets(const std::vector<Complex>& values) {
    std::vector<Jet> out;
    for (const auto& v : values) out.push_back({v, 0.0, 0.0});
    return out;
}

struct SquareSystem {
    Jet e1;
    Jet e2;
};

SquareSystem square_system(const std::vector<Jet>& p, const std::vector<Jet>& q, const std::vector<Jet>& r,
                           Complex a, Complex b) {
    const auto s = restrict_generic<Jet>(p, q, r, Jet{a, 1.0, 0.0}, Jet{b, 0.0, 1.0});
    const Jet& s0 = s[0];
    const Jet& s1 = s[1];
    const Jet& s2 = s[2];
    const Jet& s3 = s[3];
    const Jet& s4 = s[4];
    // Monic form of the two conditions; dividing by powers of s4 removes the
    // spurious solution family s4 = s3 = 0 without changing the others.
    const Jet inner = 4.0 * (s4 * s2) - s3 * s3;
    const Jet s4sq = s4 * s4;
    return {s1 / s4 - (s3 * inner) / (8.0 * (s4sq * s4)), s0 / s4 - (inner * inner) / (64.0 * (s4sq * s4sq))};
}

double norm2(const SquareSystem& sys) { return std::norm(sys.e1.v) + std::norm(sys.e2.v); }

struct NewtonResult {
    Complex a;
    Complex b;
    bool converged = false;
};

NewtonResult damped_newton(const std::vector<Jet>& p, const std::vector<Jet>& q, const std::vector<Jet>& r,
                           Complex a, Complex b, int max_iterations) {
    SquareSystem sys = square_system(p, q, r, a, b);
    for (int iter = 0; iter < max_iterations; ++iter) {
        const Complex j11 = sys.e1.da, j12 = sys.e1.db, j21 = sys.e2.da, j22 = sys.e2.db;
        const Complex det = j11 * j22 - j12 * j21;
        if (std::abs(det) == 0.0 || !std::isfinite(std::abs(det))) return {a, b, false};
        const Complex da = -(j22 * sys.e1.v - j12 * sys.e2.v) / det;
        const Complex db = -(-j21 * sys.e1.v + j11 * sys.e2.v) / det;
        const double current = norm2(sys);
        double lambda = 1.0;
        Complex na = a + da, nb = b + db;
        SquareSystem next = square_system(p, q, r, na, nb);
        while (!(norm2(next) < current) && lambda > 1e-4) {
            lambda *= 0.5;
            na = a + lambda * da;
            nb = b + lambda * db;
            next = square_system(p, q, r, na, nb);
        }
        a = na;
        b = nb;
        sys = next;
        const double step = lambda * (std::abs(da) + std::abs(db));
        if (!std::isfinite(step)) return {a, b, false};
        if (step < 1e-15 * (1.0 + std::abs(a) + std::abs(b))) return {a, b, true};
    }
    return {a, b, norm2(sys) < 1e-24};
}

template <typename R>
R square_defect_generic(const std::array<Cx<R>, 5>& s) {
    R scale = 0;
    for (const auto& c : s) scale = std::max(scale, std::abs(c));
    if (scale == 0 || std::abs(s[4]) <= scale * R(1e-12)) return std::numeric_limits<R>::infinity();
    const Cx<R> beta = s[3] / (R(2) * s[4]);
    const Cx<R> gamma = (s[2] / s[4] - beta * beta) / R(2);
    const R d1 = std::abs(s[1] - R(2) * s[4] * beta * gamma);
    const R d0 = std::abs(s[0] - s[4] * gamma * gamma);
    return std::max(d1, d0) / scale;
}

bool line_less(const NumericLine& x, const NumericLine& y) {
    return std::make_tuple(x.a.real(), x.a.imag(), x.b.real(), x.b.imag()) <
           std::make_tuple(y.a.real(), y.a.imag(), y.b.real(), y.b.imag());
}

double line_distance(const NumericLine& x, const NumericLine& y) {
    return std::max(std::abs(x.a - y.a), std::abs(x.b - y.b));
}

// ---------------------------------------------------------------------------
// Sheet matching, generic in the working precision.

template <typename R>
struct LineData {
    Cx<R> a, b;
    Cx<R> lead;  // sigma sqrt(s4)
    Cx<R> beta, gamma;
    Cx<R> w(const Cx<R>& t) const { return lead * ((t + beta) * t + gamma); }
};

template <typename R>
SheetAssignment assign_generic(const CurveCoeffs<R>& curve, const std::vector<std::pair<Cx<R>, Cx<R>>>& lines,
                               const MatchOptions& options, R match_tolerance, R residual_gate) {
    SheetAssignment result;
    std::vector<LineData<R>> data;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const auto& [a, b] = lines[n];
        const auto s = restrict_generic<Cx<R>>(curve.p, curve.q, curve.r, a, b);
        const R defect = square_defect_generic<R>(s);
        if (!(defect < residual_gate))
            throw DomainError("line " + std::to_string(n + 1) + " is not numerically a bitangent (defect " +
                              std::to_string(static_cast<double>(defect)) + ")");
        const int sigma = n < options.sheets.size() ? options.sheets[n] : 1;
        if (sigma != 1 && sigma != -1) throw std::invalid_argument("sheet choices must be +1 or -1");
        LineData<R> d;
        d.a = a;
        d.b = b;
        d.beta = s[3] / (R(2) * s[4]);
        d.gamma = (s[2] / s[4] - d.beta * d.beta) / R(2);
        d.lead = R(sigma) * std::sqrt(s[4]);
        data.push_back(d);
        result.sheets.push_back(sigma);
        result.leading.push_back({static_cast<double>(d.lead.real()), static_cast<double>(d.lead.imag())});
    }
    for (std::size_t i = 0; i < data.size(); ++i)
        for (std::size_t j = i + 1; j < data.size(); ++j) {
            const auto& li = data[i];
            const auto& lj = data[j];
            SheetAssignment::PairMatch match{i, j, false, {}, MeetKind::SamePoint};
            Cx<R> wi, wj;
            const Cx<R> da = li.a - lj.a;
            if (std::abs(da) <= R(1e-12) * std::max(R(1), std::abs(li.a))) {
                if (std::abs(li.b - lj.b) <= R(1e-12) * std::max(R(1), std::abs(li.b)))
                    throw std::invalid_argument("numeric lines " + std::to_string(i + 1) + " and " +
                                                std::to_string(j + 1) + " coincide");
                // Parallel: compare w / t^2 as t -> infinity.
                match.at_infinity = true;
                wi = li.lead;
                wj = lj.lead;
            } else {
                const Cx<R> t0 = (lj.b - li.b) / da;
                match.t0 = {static_cast<double>(t0.real()), static_cast<double>(t0.imag())};
                wi = li.w(t0);
                wj = lj.w(t0);
            }
            const R scale = std::max({R(1), std::abs(wi), std::abs(wj)});
            const bool same = std::abs(wi - wj) < match_tolerance * scale;
            const bool opposite = std::abs(wi + wj) < match_tolerance * scale;
            if (same && opposite)
                throw AmbiguousMatch("lines " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                     " cannot be told apart: both lifts vanish at the crossing to tolerance");
            if (!same && !opposite)
                throw Inconsistent("numeric lifts over lines " + std::to_string(i + 1) + " and " +
                                   std::to_string(j + 1) + " match neither up to sign");
            match.kind = same ? MeetKind::SamePoint : MeetKind::OppositePoint;
            result.matches.push_back(match);
        }
    return result;
}

template <typename R>
std::vector<std::pair<Cx<R>, Cx<R>>> to_pairs(const std::vector<NumericLine>& lines) {
    std::vector<std::pair<Cx<R>, Cx<R>>> out;
    for (const auto& l : lines) out.emplace_back(Cx<R>(l.a), Cx<R>(l.b));
    return out;
}

template <typename R>
std::vector<std::pair<Cx<R>, Cx<R>>> embed_lines(const std::vector<BitangentLine>& lines, int embedding,
                                                 unsigned bits) {
    std::vector<std::pair<Cx<R>, Cx<R>>> out;
    for (const auto& l : lines)
        out.emplace_back(embed_as<R>(l.a, embedding, bits), embed_as<R>(l.b, embedding, bits));
    return out;
}

}  // namespace

NumericCurve embed_curve(const QuarticCurve& curve, int embedding) {
    const auto c = embed_coeffs<double>(curve, embedding, 64);
    return {c.p, c.q, c.r};
}

NumericLine embed_line(const BitangentLine& line, int embedding) {
    return {embed_double(line.a, embedding), embed_double(line.b, embedding), 0.0};
}

std::array<Complex, 5> restrict_numeric(const NumericCurve& curve, Complex a, Complex b) {
    return restrict_generic<Complex>(curve.p, curve.q, curve.r, a, b);
}

double square_defect(const std::array<Complex, 5>& s) { return square_defect_generic<double>(s); }

std::vector<NumericLine> find_bitangents_numeric(const QuarticCurve& curve, const SearchOptions& options) {
    const NumericCurve numeric = embed_curve(curve, options.embedding);
    const auto p = constant_jets(numeric.p);
    const auto q = constant_jets(numeric.q);
    const auto r = constant_jets(numeric.r);

    // Seeds are drawn up front so the result does not depend on the thread count.
    std::mt19937_64 rng(options.rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double two_pi = 2.0 * std::acos(-1.0);
    // Log-uniform moduli in [radius / 400, radius] reach both small and large lines.
    const double log_span = std::log(400.0);
    auto disc_point = [&] {
        return std::polar(options.seed_radius * std::exp(-log_span * unit(rng)), two_pi * unit(rng));
    };
    std::vector<std::pair<Complex, Complex>> seeds(options.seeds);
    for (auto& seed : seeds) {
        seed.first = disc_point();
        seed.second = disc_point();
    }

    std::vector<std::optional<NumericLine>> found(seeds.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t n = begin; n < seeds.size(); n += stride) {
            const auto res = damped_newton(p, q, r, seeds[n].first, seeds[n].second, options.max_iterations);
            if (!res.converged) continue;
            const double defect = square_defect(restrict_numeric(numeric, res.a, res.b));
            if (defect < options.residual_gate) found[n] = NumericLine{res.a, res.b, defect};
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, seeds.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t, threads);
        work(0, threads);
    }

    std::vector<NumericLine> candidates;
    for (auto& f : found)
        if (f) candidates.push_back(*f);
    std::sort(candidates.begin(), candidates.end(), line_less);
    std::vector<NumericLine> unique;
    for (const auto& c : candidates) {
        auto near = std::find_if(unique.begin(), unique.end(),
                                 [&](const NumericLine& u) { return line_distance(u, c) < options.dedup_distance; });
        if (near == unique.end())
            unique.push_back(c);
        else if (c.residual < near->residual)
            *near = c;
    }
    std::sort(unique.begin(), unique.end(), line_less);
    if (options.expected != 0 && unique.size() < options.expected)
        throw ConvergenceShortfall(unique.size(), options.expected);
    return unique;
}

std::size_t SheetAssignment::components() const {
    LiftGraph graph(sheets.size());
    for (const auto& m : matches) graph.add_pair(m.i, m.j, m.kind);
    return graph.components();
}

SheetAssignment assign_sheets(const QuarticCurve& curve, const std::vector<NumericLine>& lines,
                              const MatchOptions& options) {
    const auto coeffs = embed_coeffs<double>(curve, options.embedding, 64);
    return assign_generic<double>(coeffs, to_pairs<double>(lines), options, options.match_tolerance,
                                  options.residual_gate);
}

SheetAssignment assign_sheets(const QuarticCurve& curve, const std::vector<BitangentLine>& lines,
                              const MatchOptions& options) {
    try {
        const auto coeffs = embed_coeffs<double>(curve, options.embedding, 64);
        return assign_generic<double>(coeffs, embed_lines<double>(lines, options.embedding, 64), options,
                                      options.match_tolerance, options.residual_gate);
    } catch (const AmbiguousMatch&) {
        if (!options.extended_retry) throw;
    }
    using Long = long double;
    const auto coeffs = embed_coeffs<Long>(curve, options.embedding, 80);
    const Long shrink = std::numeric_limits<Long>::epsilon() / std::numeric_limits<double>::epsilon();
    return assign_generic<Long>(coeffs, embed_lines<Long>(lines, options.embedding, 80), options,
                                Long(options.match_tolerance) * shrink, Long(options.residual_gate) * shrink);
}

std::size_t connected_number_numeric(const QuarticCurve& curve, const std::vector<NumericLine>& lines,
                                     const MatchOptions& options) {
    if (lines.empty()) throw std::invalid_argument("connected number needs at least one line");
    return assign_sheets(curve, lines, options).components();
}

std::size_t connected_number_numeric(const QuarticCurve& curve, const std::vector<BitangentLine>& lines,
                                     const MatchOptions& options) {
    if (lines.empty()) throw std::invalid_argument("connected number needs at least one line");
    return assign_sheets(curve, lines, options).components();
}

SmoothnessReport smoothness_spot_check(const QuarticCurve& curve, int embedding, std::size_t seeds,
                                       double tolerance) {
    const NumericCurve c = embed_curve(curve, embedding);
    auto eval = [](const std::vector<Complex>& poly, Complex t) {
        Complex acc = 0.0;
        for (std::size_t k = poly.size(); k-- > 0;) acc = acc * t + poly[k];
        return acc;
    };
    auto deriv = [](const std::vector<Complex>& poly) {
        std::vector<Complex> out;
        for (std::size_t k = 1; k < poly.size(); ++k) out.push_back(static_cast<double>(k) * poly[k]);
        return out;
    };
    const auto dp = deriv(c.p), dq = deriv(c.q), dr = deriv(c.r);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(-3.0, 3.0);
    std::vector<std::pair<Complex, Complex>> points;
    SmoothnessReport report;
    report.min_gradient = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < seeds; ++s) {
        Complex t{unit(rng), unit(rng)}, x{unit(rng), unit(rng)};
        bool converged = false;
        for (int iter = 0; iter < 100; ++iter) {
            const Complex pt = eval(c.p, t), qt = eval(c.q, t), rt = eval(c.r, t);
            const Complex f = ((x + pt) * x + qt) * x + rt;
            const Complex fx = (3.0 * x + 2.0 * pt) * x + qt;
            const Complex ft = (eval(dp, t) * x + eval(dq, t)) * x + eval(dr, t);
            const Complex fxt = 2.0 * eval(dp, t) * x + eval(dq, t);
            const Complex fxx = 6.0 * x + 2.0 * pt;
            const Complex det = ft * fxx - fx * fxt;
            if (std::abs(det) < 1e-300) break;
            const Complex dt = -(fxx * f - fx * fx) / det;
            const Complex dx = -(-fxt * f + ft * fx) / det;
            t += dt;
            x += dx;
            if (!std::isfinite(std::abs(t)) || !std::isfinite(std::abs(x))) break;
            if (std::abs(dt) + std::abs(dx) < 1e-14 * (1.0 + std::abs(t) + std::abs(x))) {
                converged = true;
                break;
            }
        }
        if (!converged) continue;
        const bool seen = std::any_of(points.begin(), points.end(), [&](const auto& pt) {
            return std::abs(pt.first - t) + std::abs(pt.second - x) < 1e-6;
        });
        if (seen) continue;
        points.emplace_back(t, x);
        const Complex ft = (eval(dp, t) * x + eval(dq, t)) * x + eval(dr, t);
        const double grad = std::abs(ft) / (1.0 + std::abs(t) + std::abs(x));
        report.min_gradient = std::min(report.min_gradient, grad);
        if (grad < tolerance) report.suspicious = true;
    }
    report.critical_points = points.size();
    return report;
}

}  // namespace zariski::oracle
