#include "zariski/rational.hpp"

#include <cctype>

#include "zariski/errors.hpp"

namespace zariski {

namespace {

bool valid_integer_text(std::string_view text) {
    if (text.empty()) return false;
    std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
    if (start == text.size()) return false;
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    return true;
}

Integer parse_integer(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    return Integer(std::string(text), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!valid_integer_text(num_text))
        throw SchemaError("malformed rational '" + std::string(text) + "'");
    Integer num = parse_integer(num_text);
    Integer den = 1;
    if (slash != std::string_view::npos) {
        const auto den_text = text.substr(slash + 1);
        if (!valid_integer_text(den_text))
            throw SchemaError("malformed rational '" + std::string(text) + "'");
        den = parse_integer(den_text);
        if (den == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
    }
    Rational value(num, den);
    value.canonicalize();
    return value;
}

std::string format_rational(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::optional<Rational> rational_sqrt(const Rational& value) {
    if (sgn(value) < 0) return std::nullopt;
    const Integer& num = value.get_num();
    const Integer& den = value.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Rational root(sqrt(num), sqrt(den));
    root.canonicalize();
    return root;
}

}  // namespace zariski
