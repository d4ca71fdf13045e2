#ifndef ZARISKI_TESTS_SUPPORT_HPP
#define ZARISKI_TESTS_SUPPORT_HPP

// Test-side reference computations. Nothing here calls into the library's
// field arithmetic, so they can serve as independent oracles.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "zariski/cyclotomic.hpp"

namespace testing {

using Cd = std::complex<double>;
using IntPoly = std::vector<long long>;  // lowest degree first

inline IntPoly int_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Exact division by a monic divisor.
inline IntPoly int_div(IntPoly num, const IntPoly& den) {
    IntPoly q(num.size() - den.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        q[k] = num[k + den.size() - 1];
        for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= q[k] * den[j];
    }
    return q;
}

inline int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    return n > 1 ? -result : result;
}

// Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}.
inline IntPoly reference_cyclotomic(int n) {
    IntPoly num{1}, den{1};
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        IntPoly f(d + 1, 0);
        f[0] = -1;
        f[d] = 1;
        const int mu = mobius(n / d);
        if (mu == 1) num = int_mul(num, f);
        if (mu == -1) den = int_mul(den, f);
    }
    return int_div(num, den);
}

inline Cd root_of_unity(int n, long long k) {
    const double angle = 2.0 * std::acos(-1.0) * static_cast<double>(k % n) / n;
    return std::polar(1.0, angle);
}

// Plain double evaluation of a power-basis element, independent of the MPFR bridge.
inline Cd evaluate(const zariski::FieldElement& a, int k) {
    const int n = a.field()->order();
    Cd out = 0;
    const auto coords = a.coords();
    for (std::size_t j = 0; j < coords.size(); ++j)
        out += coords[j].get_d() * root_of_unity(n, static_cast<long long>(j) * k);
    return out;
}

// The Klein data as plain complex numbers built from closed forms.
struct KleinNumeric {
    Cd z[7];
    Cd i{0.0, 1.0};
    Cd e1, e2, e3;

    KleinNumeric() {
        for (int k = 0; k < 7; ++k) z[k] = root_of_unity(7, k);
        e1 = z[1] + z[6];
        e2 = z[2] + z[5];
        e3 = z[4] + z[3];
    }
    Cd zp(int k) const { return z[((k % 7) + 7) % 7]; }

    // x = a t + b for family f, index j.
    std::pair<Cd, Cd> line(int f, int j) const {
        const Cd eps_a[4] = {1.0, e1 * e1, e2 * e2, e3 * e3};
        const Cd eps_b[4] = {1.0, 1.0 / (e3 * e3), 1.0 / (e1 * e1), 1.0 / (e2 * e2)};
        return {-zp(j) * eps_a[f], -zp(3 * j) * eps_b[f]};
    }

    // Printed sections y_k = scale (t^2 + u t + v) for k = 1..7, as (scale, u, v).
    std::array<Cd, 3> section(int k) const {
        const Cd a1 = 2.0 * zp(5) + zp(4) + zp(3) + 2.0 * zp(2) + 4.0;
        const Cd b1 = 3.0 * zp(5) + zp(4) + zp(3) + 3.0 * zp(2) + 3.0;
        const Cd a3 = 2.0 * zp(5) + zp(4) + zp(1) + 2.0 + 4.0 * zp(6);
        const Cd b3 = 3.0 * zp(4) + zp(3) + 1.0 + 3.0 * zp(6) + 3.0 * zp(5);
        switch (k) {
            case 1: return {i, 1.0, 1.0};
            case 2: return {i * e1, a1, b1};
            case 3: return {i * zp(4) * e1, zp(2) * a1, zp(4) * b1};
            case 4: return {i * zp(5) * e3, a3, b3};
            case 5: return {i * zp(3) * e1, zp(5) * a1, zp(3) * b1};
            case 6: return {i * zp(2) * e3, zp(2) * a3, zp(4) * b3};
            default:
                return {i * zp(6) * e2, zp(2) + 2.0 + 2.0 * zp(6) + zp(4) + 4.0 * zp(3),
                        zp(5) + 3.0 * zp(3) + 3.0 * zp(2) + 1.0 + 3.0 * zp(6)};
        }
    }

    std::pair<Cd, Cd> printed_line(int k) const {
        static constexpr int fam[7][2] = {{0, 0}, {1, 0}, {1, 1}, {3, 3}, {1, 6}, {3, 4}, {2, 5}};
        return line(fam[k - 1][0], fam[k - 1][1]);
    }

    Cd y(int k, Cd t) const {
        const auto s = section(k);
        return s[0] * ((t + s[1]) * t + s[2]);
    }

    // F(t, x) = x^3 + t^3 x + t.
    static Cd F(Cd t, Cd x) { return x * x * x + t * t * t * x + t; }

    // Off-diagonal Gram sign from a direct numeric comparison of the printed sections.
    int sign(int i, int j) const {
        const auto [ai, bi] = printed_line(i);
        const auto [aj, bj] = printed_line(j);
        const Cd t0 = (bj - bi) / (ai - aj);
        const Cd yi = y(i, t0), yj = y(j, t0);
        return std::abs(yi - yj) < std::abs(yi + yj) ? -1 : 1;
    }
};

// Fixed-seed generator of small random field elements.
class ElementGen {
public:
    ElementGen(zariski::FieldPtr field, std::uint64_t seed) : field_(std::move(field)), rng_(seed) {}

    zariski::FieldElement operator()(int height = 9) {
        std::uniform_int_distribution<int> num(-height, height), den(1, height);
        std::vector<zariski::Rational> coords;
        for (std::size_t k = 0; k < field_->degree(); ++k) {
            zariski::Rational q(num(rng_), den(rng_));
            q.canonicalize();
            coords.push_back(q);
        }
        return zariski::FieldElement(field_, std::move(coords));
    }

    zariski::FieldElement nonzero(int height = 9) {
        while (true) {
            auto x = (*this)(height);
            if (!x.is_zero()) return x;
        }
    }

    std::mt19937_64& rng() { return rng_; }

private:
    zariski::FieldPtr field_;
    std::mt19937_64 rng_;
};

}  // namespace testing

#endif  // ZARISKI_TESTS_SUPPORT_HPP
