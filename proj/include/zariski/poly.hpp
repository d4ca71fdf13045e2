#ifndef ZARISKI_POLY_HPP
#define ZARISKI_POLY_HPP

#include <climits>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "zariski/cyclotomic.hpp"

namespace zariski {

/// Univariate polynomial in t over a cyclotomic field. Coefficients are
/// stored lowest degree first with no trailing zeros.
class Poly {
public:
    /// Degree of the zero polynomial.
    static constexpr int kMinusInfinity = INT_MIN;

    explicit Poly(FieldPtr field);
    Poly(FieldPtr field, std::vector<FieldElement> coeffs);

    static Poly constant(const FieldElement& c);
    /// a*t + b
    static Poly linear(const FieldElement& a, const FieldElement& b);
    /// c*t^2 + d*t + e
    static Poly quadratic(const FieldElement& c, const FieldElement& d, const FieldElement& e);
    /// Polynomial with rational coefficients, lowest degree first.
    static Poly from_rationals(const FieldPtr& field, const std::vector<Rational>& coeffs);

    const FieldPtr& field() const noexcept { return field_; }
    int degree() const noexcept { return coeffs_.empty() ? kMinusInfinity : static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
    /// Coefficient of t^k, zero beyond the degree.
    FieldElement coeff(std::size_t k) const;
    /// Leading coefficient; throws DivisionByZero for the zero polynomial.
    const FieldElement& leading() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);
    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(Poly lhs, const Poly& rhs) { return lhs *= rhs; }

    Poly scaled(const FieldElement& factor) const;
    Poly monic() const;
    Poly derivative() const;
    FieldElement evaluate(const FieldElement& at) const;

    friend bool operator==(const Poly& lhs, const Poly& rhs);

    std::string to_string(const std::string& var = "t") const;

private:
    void trim();

    FieldPtr field_;
    std::vector<FieldElement> coeffs_;
};

/// Quotient and remainder; throws DivisionByZero for a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den);
/// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
Poly gcd(const Poly& f, const Poly& g);

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace zariski

#endif  // ZARISKI_POLY_HPP
