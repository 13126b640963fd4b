#include "ultrachase/rational.hpp"

namespace ultrachase {

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            mpz_class num(std::string(text), 10);
            return Rational(num);
        }
        mpz_class num(std::string(text.substr(0, slash)), 10);
        mpz_class den(std::string(text.substr(slash + 1)), 10);
        if (den == 0) {
            throw std::invalid_argument("parse_rational: zero denominator in '" +
                                        std::string(text) + "'");
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: malformed rational '" +
                                    std::string(text) + "'");
    }
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

} // namespace ultrachase
