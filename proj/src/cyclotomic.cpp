#include "zariski/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "zariski/errors.hpp"

namespace zariski {

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

namespace {

using IntPoly = std::vector<Integer>;

// Exact division by a monic integer polynomial; the remainder must vanish.
IntPoly divide_exact_monic(IntPoly num, const IntPoly& den) {
    const std::size_t dn = den.size() - 1;
    IntPoly quot(num.size() - dn, 0);
    for (std::size_t k = num.size(); k-- > dn;) {
        const Integer c = num[k];
        quot[k - dn] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
    }
    for (std::size_t i = 0; i < dn; ++i)
        if (num[i] != 0) throw std::logic_error("cyclotomic division left a remainder");
    return quot;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
    static std::mutex mutex;
    static std::map<int, IntPoly> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    IntPoly poly(static_cast<std::size_t>(n) + 1, 0);
    poly.front() = -1;
    poly.back() = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) poly = divide_exact_monic(std::move(poly), cyclotomic_polynomial(d));
    std::lock_guard lock(mutex);
    cache.emplace(n, poly);
    return poly;
}

int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

FieldPtr CyclotomicField::make(int order) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
    return FieldPtr(new CyclotomicField(order, cyclotomic_polynomial(order)));
}

std::vector<int> CyclotomicField::embeddings() const {
    std::vector<int> ks;
    for (int k = 1; k <= order_; ++k)
        if (std::gcd(k, order_) == 1) ks.push_back(k);
    return ks;
}

// ---------------------------------------------------------------------------
// Field elements

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// In-place reduction modulo the monic modulus.
void reduce(QPoly& coeffs, const std::vector<Integer>& modulus) {
    const std::size_t deg = modulus.size() - 1;
    for (std::size_t k = coeffs.size(); k-- > deg;) {
        if (coeffs[k] == 0) continue;
        const Rational c = coeffs[k];
        for (std::size_t i = 0; i <= deg; ++i) coeffs[k - deg + i] -= c * modulus[i];
    }
    coeffs.resize(deg, Rational(0));
}

// Remainder and quotient of polynomials over Q. Both inputs trimmed, den nonzero.
std::pair<QPoly, QPoly> qdivmod(QPoly num, const QPoly& den) {
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) return {QPoly{}, num};
    QPoly quot(num.size() - dn, Rational(0));
    const Rational lead_inv = 1 / den.back();
    for (std::size_t k = num.size(); k-- > dn;) {
        if (num[k] == 0) continue;
        const Rational c = num[k] * lead_inv;
        quot[k - dn] = c;
        for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
    }
    num.resize(dn);
    trim(num);
    return {quot, num};
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

QPoly qsub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

}  // namespace

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (!field_) throw std::invalid_argument("FieldElement requires a field");
    for (auto& c : coords_) c.canonicalize();
    if (coords_.size() != field_->degree()) {
        if (coords_.size() < field_->degree())
            coords_.resize(field_->degree(), Rational(0));
        else
            reduce(coords_, field_->modulus());
    }
}

FieldElement FieldElement::zero(const FieldPtr& field) {
    return FieldElement(field, std::vector<Rational>(field->degree(), Rational(0)));
}

FieldElement FieldElement::one(const FieldPtr& field) { return rational(field, Rational(1)); }

FieldElement FieldElement::rational(const FieldPtr& field, const Rational& value) {
    std::vector<Rational> coords(field->degree(), Rational(0));
    coords[0] = value;
    return FieldElement(field, std::move(coords));
}

FieldElement FieldElement::zeta_power(const FieldPtr& field, long long k) {
    const long long n = field->order();
    const auto e = static_cast<std::size_t>(((k % n) + n) % n);
    std::vector<Rational> coords(std::max(e + 1, field->degree()), Rational(0));
    coords[e] = 1;
    reduce(coords, field->modulus());
    return FieldElement(field, std::move(coords));
}

bool FieldElement::is_zero() const noexcept {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_one() const noexcept {
    if (coords_[0] != 1) return false;
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

std::optional<Rational> FieldElement::as_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return std::nullopt;
    return coords_[0];
}

void FieldElement::require_same_field(const FieldElement& other) const {
    if (field_ != other.field_ && field_->order() != other.field_->order())
        throw FieldMismatch(field_->order(), other.field_->order());
}

FieldElement FieldElement::operator-() const {
    FieldElement out = *this;
    for (auto& c : out.coords_) c = -c;
    return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
    require_same_field(rhs);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
    require_same_field(rhs);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
    require_same_field(rhs);
    QPoly product = qmul(coords_, rhs.coords_);
    if (product.empty()) product.assign(coords_.size(), Rational(0));
    reduce(product, field_->modulus());
    coords_ = std::move(product);
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
    require_same_field(rhs);
    return *this *= rhs.inverse();
}

FieldElement FieldElement::scaled(const Rational& factor) const {
    FieldElement out = *this;
    for (auto& c : out.coords_) c *= factor;
    return out;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero field element");
    QPoly r0(field_->modulus().begin(), field_->modulus().end());
    QPoly r1 = coords_;
    trim(r1);
    QPoly s0{};
    QPoly s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = qdivmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly s = qsub(s0, qmul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant because Phi_n is irreducible.
    const Rational g = r0.front();
    for (auto& c : s0) c /= g;
    if (s0.size() < field_->degree()) s0.resize(field_->degree(), Rational(0));
    reduce(s0, field_->modulus());
    return FieldElement(field_, std::move(s0));
}

FieldElement FieldElement::pow(long long exponent) const {
    FieldElement base = exponent < 0 ? inverse() : *this;
    unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-exponent)
                                        : static_cast<unsigned long long>(exponent);
    FieldElement result = one(field_);
    while (e != 0) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e != 0) base *= base;
    }
    return result;
}

bool operator==(const FieldElement& lhs, const FieldElement& rhs) {
    return lhs.field_->order() == rhs.field_->order() && lhs.coords_ == rhs.coords_;
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const Rational& c = coords_[i];
        if (c == 0) continue;
        const bool negative = sgn(c) < 0;
        const Rational mag = abs(c);
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        if (i == 0) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& value) { return os << value.to_string(); }

// ---------------------------------------------------------------------------
// Numeric bridge

namespace {

unsigned digits10_for_bits(unsigned bits) { return static_cast<unsigned>(bits * 0.30103) + 2; }

// Sets the MPFR default precision for the lifetime of the guard.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(BigFloat::default_precision()) {
        BigFloat::default_precision(digits10_for_bits(bits));
    }
    ~PrecisionScope() { BigFloat::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

BigFloat to_big(const Rational& q) {
    BigFloat out;
    mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return out;
}

BigComplex cadd(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
BigComplex csub(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
BigComplex cmul(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
BigComplex cdiv(const BigComplex& a, const BigComplex& b) {
    const BigFloat den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
BigFloat cabs(const BigComplex& a) { return sqrt(a.re * a.re + a.im * a.im); }
BigComplex cconj(const BigComplex& a) { return {a.re, -a.im}; }

BigComplex csqrt(const BigComplex& z) {
    const BigFloat r = cabs(z);
    BigFloat re = sqrt((r + z.re) / 2);
    BigFloat im = sqrt((r - z.re) / 2);
    if (z.im < 0) im = -im;
    return {re, im};
}

// Powers exp(2 pi i k m / n) for m = 0..count-1.
std::vector<BigComplex> root_powers(int n, int k, std::size_t count) {
    BigFloat pi;
    mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
    const BigFloat two_pi = 2 * pi;
    std::vector<BigComplex> out;
    out.reserve(count);
    for (std::size_t m = 0; m < count; ++m) {
        const long long e = (static_cast<long long>(k) * static_cast<long long>(m)) % n;
        const BigFloat angle = two_pi * e / n;
        out.push_back({cos(angle), sin(angle)});
    }
    return out;
}

BigComplex embed_at_current_precision(const FieldElement& a, int k) {
    const auto powers = root_powers(a.field()->order(), k, a.coords().size());
    BigComplex sum{BigFloat(0), BigFloat(0)};
    for (std::size_t m = 0; m < powers.size(); ++m) {
        if (a.coords()[m] == 0) continue;
        const BigFloat c = to_big(a.coords()[m]);
        sum.re += c * powers[m].re;
        sum.im += c * powers[m].im;
    }
    return sum;
}

void require_valid_embedding(const FieldElement& a, int k) {
    const int n = a.field()->order();
    if (std::gcd(((k % n) + n) % n, n) != 1)
        throw InvalidEmbedding("embedding exponent " + std::to_string(k) + " is not a unit modulo " +
                               std::to_string(n));
}

}  // namespace

BigComplex embed(const FieldElement& a, int k, unsigned precision_bits) {
    require_valid_embedding(a, k);
    PrecisionScope scope(precision_bits);
    return embed_at_current_precision(a, k);
}

std::complex<double> embed_double(const FieldElement& a, int k) {
    const BigComplex z = embed(a, k, 64);
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

// ---------------------------------------------------------------------------
// Square roots

namespace {

// sqrt(a) when a = q * zeta^m with q rational; exponent halving.
std::optional<FieldElement> sqrt_fast_path(const FieldElement& a) {
    const FieldPtr& field = a.field();
    const int n = field->order();
    const FieldElement zeta_inv = FieldElement::zeta_power(field, -1);
    FieldElement shifted = a;
    for (int m = 0; m < n; ++m, shifted *= zeta_inv) {
        const auto q = shifted.as_rational();
        if (!q) continue;
        int exponent = m;
        Rational magnitude = *q;
        if (sgn(magnitude) < 0) {
            if (n % 2 != 0) return std::nullopt;
            magnitude = -magnitude;
            exponent = (exponent + n / 2) % n;
        }
        const auto root = rational_sqrt(magnitude);
        if (!root) return std::nullopt;
        if (exponent % 2 == 0) return FieldElement::zeta_power(field, exponent / 2).scaled(*root);
        if (n % 2 != 0) return FieldElement::zeta_power(field, (exponent + n) / 2).scaled(*root);
        return std::nullopt;
    }
    return std::nullopt;
}

// Best continued-fraction convergent within `eps` of x with denominator
// below 2^denominator_bits.
std::optional<Rational> recognise_rational(const BigFloat& x, unsigned denominator_bits, const BigFloat& eps) {
    const Integer bound = Integer(1) << denominator_bits;
    Integer h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    BigFloat y = x;
    for (int iter = 0; iter < 4 * static_cast<int>(denominator_bits) + 8; ++iter) {
        const BigFloat fl = floor(y);
        Integer a;
        mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDD);
        const Integer h = a * h_prev + h_prev2;
        const Integer k = a * k_prev + k_prev2;
        if (k > bound) return std::nullopt;
        Rational candidate(h, k);
        candidate.canonicalize();
        if (abs(x - to_big(candidate)) < eps) return candidate;
        const BigFloat frac = y - fl;
        if (frac == 0) return std::nullopt;
        y = 1 / frac;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return std::nullopt;
}

// Gauss-Jordan inverse with partial pivoting.
std::vector<std::vector<BigComplex>> invert(std::vector<std::vector<BigComplex>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<BigComplex>> inv(n, std::vector<BigComplex>(n, BigComplex{0, 0}));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = {1, 0};
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (cabs(m[r][col]) > cabs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        const BigComplex p = m[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            m[col][c] = cdiv(m[col][c], p);
            inv[col][c] = cdiv(inv[col][c], p);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const BigComplex f = m[r][col];
            if (f.re == 0 && f.im == 0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                m[r][c] = csub(m[r][c], cmul(f, m[col][c]));
                inv[r][c] = csub(inv[r][c], cmul(f, inv[col][c]));
            }
        }
    }
    return inv;
}

}  // namespace

std::optional<FieldElement> sqrt_in_field(const FieldElement& a, const SqrtOptions& options) {
    if (a.is_zero()) return a;
    if (auto fast = sqrt_fast_path(a)) {
        if (*fast * *fast == a) return fast;
    }
    const FieldPtr& field = a.field();
    const int n = field->order();
    const std::size_t dim = field->degree();
    if (dim == 1) return std::nullopt;  // Q itself: the fast path is complete.

    PrecisionScope scope(options.precision_bits);

    // Embeddings ordered as representatives k < n/2 followed by their conjugates n - k.
    std::vector<int> reps;
    for (int k : field->embeddings())
        if (2 * k < n) reps.push_back(k);
    std::vector<int> ks = reps;
    for (int k : reps) ks.push_back(n - k);

    std::vector<std::vector<BigComplex>> vandermonde;
    for (int k : ks) vandermonde.push_back(root_powers(n, k, dim));
    const auto vinv = invert(std::move(vandermonde));

    std::vector<BigComplex> roots;
    for (int k : reps) roots.push_back(csqrt(embed_at_current_precision(a, k)));

    const int eps_bits = static_cast<int>(options.precision_bits + 2 * options.denominator_bits) / 2;
    const BigFloat eps = pow(BigFloat(2), -eps_bits);

    bool recognised_but_wrong = false;
    const std::size_t half = reps.size();
    // Global sign is irrelevant; fix the first representative's sign.
    for (std::size_t mask = 0; mask < (std::size_t{1} << (half - 1)); ++mask) {
        std::vector<BigComplex> values(dim);
        for (std::size_t r = 0; r < half; ++r) {
            BigComplex w = roots[r];
            if (r > 0 && ((mask >> (r - 1)) & 1U)) w = {-w.re, -w.im};
            values[r] = w;
            values[half + r] = cconj(w);
        }
        std::vector<Rational> coords;
        coords.reserve(dim);
        for (std::size_t m = 0; m < dim; ++m) {
            BigComplex acc{0, 0};
            for (std::size_t r = 0; r < dim; ++r) acc = cadd(acc, cmul(vinv[m][r], values[r]));
            if (abs(acc.im) > eps) break;
            auto q = recognise_rational(acc.re, options.denominator_bits, eps);
            if (!q) break;
            coords.push_back(*q);
        }
        if (coords.size() != dim) continue;
        FieldElement candidate(field, std::move(coords));
        if (candidate * candidate == a) return candidate;
        recognised_but_wrong = true;
    }
    if (recognised_but_wrong)
        throw PrecisionExhausted("square root candidate recognised at " + std::to_string(options.precision_bits) +
                                 " bits failed exact verification");
    return std::nullopt;
}

}  // namespace zariski
