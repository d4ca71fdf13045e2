#include "zariski/poly.hpp"

#include <ostream>
#include <sstream>

#include "zariski/errors.hpp"

namespace zariski {

namespace {

void require_field(const FieldPtr& expected, const FieldPtr& actual) {
    if (expected->order() != actual->order()) throw FieldMismatch(expected->order(), actual->order());
}

}  // namespace

Poly::Poly(FieldPtr field) : field_(std::move(field)) {}

Poly::Poly(FieldPtr field, std::vector<FieldElement> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) require_field(field_, c.field());
    trim();
}

Poly Poly::constant(const FieldElement& c) { return Poly(c.field(), {c}); }

Poly Poly::linear(const FieldElement& a, const FieldElement& b) { return Poly(a.field(), {b, a}); }

Poly Poly::quadratic(const FieldElement& c, const FieldElement& d, const FieldElement& e) {
    return Poly(c.field(), {e, d, c});
}

Poly Poly::from_rationals(const FieldPtr& field, const std::vector<Rational>& coeffs) {
    std::vector<FieldElement> elems;
    elems.reserve(coeffs.size());
    for (const auto& q : coeffs) elems.push_back(FieldElement::rational(field, q));
    return Poly(field, std::move(elems));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Poly::coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : FieldElement::zero(field_);
}

const FieldElement& Poly::leading() const {
    if (coeffs_.empty()) throw DivisionByZero("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
    require_field(field_, rhs.field_);
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), FieldElement::zero(field_));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) { return *this += -rhs; }

Poly& Poly::operator*=(const Poly& rhs) {
    require_field(field_, rhs.field_);
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<FieldElement> out(coeffs_.size() + rhs.coeffs_.size() - 1, FieldElement::zero(field_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    coeffs_ = std::move(out);
    trim();
    return *this;
}

Poly Poly::scaled(const FieldElement& factor) const {
    Poly out = *this;
    for (auto& c : out.coeffs_) c *= factor;
    out.trim();
    return out;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inverse());
}

Poly Poly::derivative() const {
    std::vector<FieldElement> out;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out.push_back(coeffs_[k].scaled(Rational(static_cast<long>(k))));
    return Poly(field_, std::move(out));
}

FieldElement Poly::evaluate(const FieldElement& at) const {
    require_field(field_, at.field());
    FieldElement acc = FieldElement::zero(field_);
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * at + coeffs_[k];
    return acc;
}

bool operator==(const Poly& lhs, const Poly& rhs) {
    return lhs.field_->order() == rhs.field_->order() && lhs.coeffs_ == rhs.coeffs_;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeffs_[k] << ")";
        if (k > 0) os << "*" << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DivisionByZero("polynomial division by zero");
    require_field(num.field(), den.field());
    if (num.degree() < den.degree()) return {Poly(num.field()), num};
    const std::size_t dn = static_cast<std::size_t>(den.degree());
    std::vector<FieldElement> rem = num.coeffs();
    std::vector<FieldElement> quot(rem.size() - dn, FieldElement::zero(num.field()));
    const FieldElement lead_inv = den.leading().inverse();
    for (std::size_t k = rem.size(); k-- > dn;) {
        if (rem[k].is_zero()) continue;
        const FieldElement c = rem[k] * lead_inv;
        quot[k - dn] = c;
        for (std::size_t i = 0; i <= dn; ++i) rem[k - dn + i] -= c * den.coeffs()[i];
    }
    rem.resize(dn, FieldElement::zero(num.field()));
    return {Poly(num.field(), std::move(quot)), Poly(num.field(), std::move(rem))};
}

Poly gcd(const Poly& f, const Poly& g) {
    Poly a = f;
    Poly b = g;
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

}  // namespace zariski
