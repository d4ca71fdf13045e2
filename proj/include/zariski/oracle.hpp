#ifndef ZARISKI_ORACLE_HPP
#define ZARISKI_ORACLE_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "zariski/curve.hpp"
#include "zariski/pairing.hpp"

// Floating-point cross-checks that never touch the exact gcd/sqrt pipeline.
namespace zariski::oracle {

using Complex = std::complex<double>;

/// Coefficients of p, q, r (lowest degree first) under one complex embedding.
struct NumericCurve {
    std::vector<Complex> p;
    std::vector<Complex> q;
    std::vector<Complex> r;
};

NumericCurve embed_curve(const QuarticCurve& curve, int embedding);

/// Line x = a t + b with its perfect-square defect.
struct NumericLine {
    Complex a;
    Complex b;
    double residual = 0.0;
};

NumericLine embed_line(const BitangentLine& line, int embedding);

/// Coefficients s0..s4 of F(t, a t + b).
std::array<Complex, 5> restrict_numeric(const NumericCurve& curve, Complex a, Complex b);

/// max(|s1 - 2 s4 beta gamma|, |s0 - s4 gamma^2|) / max |s_k|, where
/// s4 (t^2 + beta t + gamma)^2 matches the top three coefficients.
double square_defect(const std::array<Complex, 5>& s);

struct SearchOptions {
    int embedding = 1;
    std::size_t seeds = 4000;
    std::uint64_t rng_seed = 20240601;
    double seed_radius = 6.0;
    double residual_gate = 1e-8;
    double dedup_distance = 1e-6;
    int max_iterations = 200;
    /// Raise ConvergenceShortfall when fewer lines are found; 0 disables.
    std::size_t expected = 0;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Damped Newton on the two perfect-square conditions
///   8 s4^2 s1 = s3 (4 s4 s2 - s3^2),   64 s4^3 s0 = (4 s4 s2 - s3^2)^2
/// from random complex seeds; deduplicated and sorted by coordinates.
std::vector<NumericLine> find_bitangents_numeric(const QuarticCurve& curve, const SearchOptions& options = {});

struct MatchOptions {
    int embedding = 1;
    double residual_gate = 1e-8;
    double match_tolerance = 1e-6;
    /// Optional sheet choice per line (+1/-1); empty means all +1.
    std::vector<int> sheets;
    /// Retry in long double with a tighter gate when a match is ambiguous.
    bool extended_retry = true;
};

/// Per-line choice of numeric square root w_i = sigma_i sqrt(s4_i) g_i(t) and
/// the resulting same/opposite decision for every pair.
struct SheetAssignment {
    struct PairMatch {
        std::size_t i = 0;
        std::size_t j = 0;
        bool at_infinity = false;
        Complex t0{};
        MeetKind kind = MeetKind::SamePoint;
    };

    std::vector<int> sheets;
    std::vector<Complex> leading;  // sigma_i sqrt(s4_i)
    std::vector<PairMatch> matches;

    std::size_t components() const;
};

/// Throws AmbiguousMatch when both w_i - w_j and w_i + w_j vanish to tolerance
/// and Inconsistent when neither does.
SheetAssignment assign_sheets(const QuarticCurve& curve, const std::vector<NumericLine>& lines,
                              const MatchOptions& options = {});

/// Same as above but embeds exact lines itself, which allows the extended
/// precision retry.
SheetAssignment assign_sheets(const QuarticCurve& curve, const std::vector<BitangentLine>& lines,
                              const MatchOptions& options = {});

std::size_t connected_number_numeric(const QuarticCurve& curve, const std::vector<NumericLine>& lines,
                                     const MatchOptions& options = {});
std::size_t connected_number_numeric(const QuarticCurve& curve, const std::vector<BitangentLine>& lines,
                                     const MatchOptions& options = {});

struct SmoothnessReport {
    std::size_t critical_points = 0;  // distinct solutions of F = F_x = 0 found
    double min_gradient = 0.0;        // smallest |F_t| among them
    bool suspicious = false;          // some critical point has |F_t| below tolerance
};

/// Warning-level check that F, F_x and F_t have no common affine zero:
/// Newton on (F, F_x) from random seeds, then inspect F_t at the solutions.
SmoothnessReport smoothness_spot_check(const QuarticCurve& curve, int embedding = 1, std::size_t seeds = 64,
                                       double tolerance = 1e-8);

}  // namespace zariski::oracle

#endif  // ZARISKI_ORACLE_HPP
