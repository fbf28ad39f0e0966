#include "tensym/rational.hpp"

#include <cctype>
#include <ostream>

namespace tensym {

Rational::Rational(BigInt num, BigInt den) {
    if (den.is_zero()) throw ValidationError("Rational: zero denominator");
    // cpp_rational's two-argument constructor rejects negative denominators,
    // so fold the sign into the numerator first.
    if (den < 0) {
        num = -num;
        den = -den;
    }
    v_ = boost::multiprecision::cpp_rational(std::move(num), std::move(den));
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) throw ParseError("Rational: empty integer in '" + std::string(whole) + "'");
    std::size_t i = 0;
    if (text[0] == '-') {
        if (text.size() == 1) throw ParseError("Rational: bare sign in '" + std::string(whole) + "'");
        i = 1;
    }
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError("Rational: bad character in '" + std::string(whole) + "'");
    }
    return BigInt(std::string(text));
}

} // namespace

Rational Rational::parse(std::string_view text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    if (text.find('/', slash + 1) != std::string_view::npos)
        throw ParseError("Rational: multiple '/' in '" + std::string(text) + "'");
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den < 0) throw ParseError("Rational: negative denominator in '" + std::string(text) + "'");
    if (den.is_zero()) throw ValidationError("Rational: zero denominator in '" + std::string(text) + "'");
    return Rational(std::move(num), std::move(den));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

} // namespace tensym
