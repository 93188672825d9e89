#include "fdbound/rational.hpp"

#include <cctype>

#include "fdbound/error.hpp"

namespace fdbound {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = (s[0] == '-');
        s = s.substr(1);
    }
    if (s.empty()) throw ParseError("empty rational literal: '" + text + "'");

    Rational value;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("malformed fraction literal: '" + text + "'");
        mpz_class d(den);
        if (d == 0) throw ParseError("zero denominator in rational literal: '" + text + "'");
        value = Rational(mpz_class(num), d);
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac))
            throw ParseError("malformed decimal literal: '" + text + "'");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        value = Rational(mpz_class(whole) * scale + mpz_class(frac), scale);
    } else {
        if (!all_digits(s)) throw ParseError("malformed rational literal: '" + text + "'");
        value = Rational(mpz_class(s));
    }
    value.canonicalize();
    if (negative) value = -value;
    return value;
}

std::string format_rational(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

} // namespace fdbound
