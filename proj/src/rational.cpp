#include "stutter/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace stutter {

namespace {
bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}
}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational r;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
        mpz_class d(std::string(den), 10);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        r = Rational(mpz_class(std::string(num), 10), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto ip = body.substr(0, dot);
        auto fp = body.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp) || (ip.empty() && fp.empty()))
            throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        mpz_class num(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
        r = Rational(num, scale);
    } else {
        if (!all_digits(body)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        r = Rational(mpz_class(std::string(body), 10));
    }
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace stutter
