#include "coniclines/rational.hpp"

#include "coniclines/errors.hpp"

namespace coniclines {

std::string rational_to_string(const Rational& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1)
        s += "/" + q.get_den().get_str();
    return s;
}

Rational rational_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        Int num(slash == std::string::npos ? text : text.substr(0, slash));
        Int den(slash == std::string::npos ? std::string("1") : text.substr(slash + 1));
        if (sgn(den) == 0)
            fail(ErrorCode::invalid_argument, "rational with zero denominator: " + text);
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        fail(ErrorCode::invalid_argument, "malformed rational: " + text);
    }
}

} // namespace coniclines
