#include "takagi/rational.hpp"

#include <stdexcept>

namespace takagi {

Int pow_int(const Int& base, unsigned long exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

Int pow_int(long base, unsigned long exp) {
    return pow_int(Int(base), exp);
}

Rational rational_pow(long base, long exp) {
    if (base == 0 && exp < 0) throw std::domain_error("rational_pow: 0 to a negative power");
    Int p = pow_int(base < 0 ? -base : base, static_cast<unsigned long>(exp < 0 ? -exp : exp));
    if (base < 0 && (exp & 1)) p = -p;
    Rational out = exp >= 0 ? Rational(p) : Rational(1, p);
    out.canonicalize();
    return out;
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto dot = text.find('.');
    try {
        if (dot == std::string::npos) {
            Rational q(text, 10); // handles "p", "p/q"
            q.canonicalize();
            if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
            return q;
        }
        // decimal: sign? digits '.' digits
        const std::string ipart = text.substr(0, dot);
        const std::string fpart = text.substr(dot + 1);
        if (fpart.empty() || fpart.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad decimal");
        bool neg = false;
        std::string istr = ipart;
        if (!istr.empty() && (istr[0] == '+' || istr[0] == '-')) {
            neg = istr[0] == '-';
            istr = istr.substr(1);
        }
        if (istr.empty()) istr = "0";
        if (istr.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad decimal");
        Int num(istr + fpart, 10); // explicit base: leading zeros are not octal
        Rational q(num, pow_int(10, fpart.size()));
        q.canonicalize();
        return neg ? Rational(-q) : q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("parse_rational: cannot parse '" + text + "'");
    }
}

Rational fractional_part(const Rational& x) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return x - Rational(fl);
}

} // namespace takagi
