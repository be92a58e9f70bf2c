#include "ski/laurent.hpp"

#include <sstream>

namespace ski {

Rational Laurent::eval(const Rational& x) const {
    if (x == 0)
        throw domain_error("Laurent evaluation at 0");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational p(1);
        const Rational base = e >= 0 ? x : Rational(1) / x;
        for (long k = 0; k < (e >= 0 ? e : -e); ++k)
            p *= base;
        acc += c * p;
    }
    return acc;
}

bool Laurent::symmetric() const {
    for (const auto& [e, c] : terms_) {
        auto it = terms_.find(-e);
        if (it == terms_.end() || it->second != c)
            return false;
    }
    return true;
}

bool Laurent::equal_up_to_units(const Laurent& a, const Laurent& b) {
    if (a.is_zero() || b.is_zero())
        return a.is_zero() == b.is_zero();
    if (a.terms_.size() != b.terms_.size())
        return false;
    const long shift = a.min_exp() - b.min_exp();
    for (int sgn : {1, -1}) {
        bool ok = true;
        for (const auto& [e, c] : a.terms_) {
            auto it = b.terms_.find(e - shift);
            if (it == b.terms_.end() || it->second * sgn != c) {
                ok = false;
                break;
            }
        }
        if (ok)
            return true;
    }
    return false;
}

std::string Laurent::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const long e = it->first;
        Rational c = it->second;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0)
                c = -c;
        }
        first = false;
        const bool unit_coeff = (c == 1);
        if (e == 0) {
            os << rat_str(c);
        } else {
            if (!unit_coeff)
                os << rat_str(c) << "*";
            os << "t";
            if (e != 1)
                os << "^" << e;
        }
    }
    return os.str();
}

} // namespace ski
