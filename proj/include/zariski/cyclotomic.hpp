#ifndef ZARISKI_CYCLOTOMIC_HPP
#define ZARISKI_CYCLOTOMIC_HPP

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "zariski/rational.hpp"

namespace zariski {

class CyclotomicField;
using FieldPtr = std::shared_ptr<const CyclotomicField>;

/// The cyclotomic field Q(zeta_n), zeta = exp(2 pi i / n), presented as
/// Q[x] / Phi_n(x).
class CyclotomicField : public std::enable_shared_from_this<CyclotomicField> {
public:
    /// Builds Q(zeta_order). Phi_n is obtained by exact division of x^n - 1
    /// by Phi_d for every proper divisor d of n.
    static FieldPtr make(int order);

    int order() const noexcept { return order_; }
    /// phi(n), the dimension over Q.
    std::size_t degree() const noexcept { return modulus_.size() - 1; }
    /// Integer coefficients of Phi_n, index = power of x, monic.
    const std::vector<Integer>& modulus() const noexcept { return modulus_; }

    /// Exponents k in [1, n] with gcd(k, n) = 1; the complex embeddings.
    std::vector<int> embeddings() const;

    bool operator==(const CyclotomicField& other) const noexcept { return order_ == other.order_; }

private:
    CyclotomicField(int order, std::vector<Integer> modulus)
        : order_(order), modulus_(std::move(modulus)) {}

    int order_;
    std::vector<Integer> modulus_;
};

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(int n);

/// Euler's totient.
int euler_phi(int n);

/// Fixed-precision MPFR complex number used by the numeric bridge.
using BigFloat = boost::multiprecision::mpfr_float;
struct BigComplex {
    BigFloat re;
    BigFloat im;
};

/// An element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1),
/// always reduced modulo Phi_n, so coordinate equality is field equality.
class FieldElement {
public:
    FieldElement(FieldPtr field, std::vector<Rational> coords);

    static FieldElement zero(const FieldPtr& field);
    static FieldElement one(const FieldPtr& field);
    static FieldElement rational(const FieldPtr& field, const Rational& value);
    /// zeta^k for any integer k (negative allowed).
    static FieldElement zeta_power(const FieldPtr& field, long long k);

    const FieldPtr& field() const noexcept { return field_; }
    std::span<const Rational> coords() const noexcept { return coords_; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    /// Constant coordinate if every higher coordinate is zero.
    std::optional<Rational> as_rational() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& rhs);
    FieldElement& operator-=(const FieldElement& rhs);
    FieldElement& operator*=(const FieldElement& rhs);
    FieldElement& operator/=(const FieldElement& rhs);

    friend FieldElement operator+(FieldElement lhs, const FieldElement& rhs) { return lhs += rhs; }
    friend FieldElement operator-(FieldElement lhs, const FieldElement& rhs) { return lhs -= rhs; }
    friend FieldElement operator*(FieldElement lhs, const FieldElement& rhs) { return lhs *= rhs; }
    friend FieldElement operator/(FieldElement lhs, const FieldElement& rhs) { return lhs /= rhs; }

    FieldElement scaled(const Rational& factor) const;
    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_n.
    FieldElement inverse() const;
    FieldElement pow(long long exponent) const;

    /// Throws FieldMismatch unless both operands live in the same field.
    void require_same_field(const FieldElement& other) const;

    friend bool operator==(const FieldElement& lhs, const FieldElement& rhs);

    std::string to_string() const;

private:
    FieldPtr field_;
    std::vector<Rational> coords_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& value);

/// Value of `a` under zeta -> exp(2 pi i k / n), computed with `precision_bits`
/// of MPFR precision. Throws InvalidEmbedding unless gcd(k, n) = 1.
BigComplex embed(const FieldElement& a, int k, unsigned precision_bits);
/// Double-precision convenience wrapper around `embed`.
std::complex<double> embed_double(const FieldElement& a, int k);

struct SqrtOptions {
    unsigned precision_bits = 256;
    unsigned denominator_bits = 64;
};

/// Square root inside the field.
///
/// Returns s with s * s == a (always verified exactly) or std::nullopt when no
/// root of bounded height exists. Throws PrecisionExhausted when a numeric
/// candidate was recognised but did not verify, which means the working
/// precision was too low; the caller may retry with more bits.
std::optional<FieldElement> sqrt_in_field(const FieldElement& a, const SqrtOptions& options = {});

}  // namespace zariski

#endif  // ZARISKI_CYCLOTOMIC_HPP
