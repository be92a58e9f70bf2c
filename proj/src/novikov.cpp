#include "ski/novikov.hpp"

#include <sstream>

#include "ski/error.hpp"

namespace ski {

// Floors are "unknown at and below": a stored term's exponent is always
// strictly above the floor, and O(T^f) absorbs any term at exponent <= f.
void NovikovElement::set_floor(const std::optional<Rational>& f) {
    floor_ = f;
    if (!floor_)
        return;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first <= *floor_)
            it = terms_.erase(it);
        else
            ++it;
    }
}

std::pair<Rational, Rational> NovikovElement::leading() const {
    if (terms_.empty())
        throw domain_error(ambiguous()
                               ? "leading term hidden below truncation floor"
                               : "leading term of zero");
    return {terms_.begin()->first, terms_.begin()->second};
}

namespace {

std::optional<Rational> max_floor(const std::optional<Rational>& a,
                                  const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
}

} // namespace

NovikovElement NovikovElement::operator+(const NovikovElement& o) const {
    NovikovElement r(*this);
    for (const auto& [e, c] : o.terms_) {
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
            r.terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    r.set_floor(max_floor(floor_, o.floor_));
    return r;
}

NovikovElement NovikovElement::operator-() const {
    NovikovElement r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

NovikovElement NovikovElement::operator-(const NovikovElement& o) const {
    return *this + (-o);
}

NovikovElement NovikovElement::operator*(const NovikovElement& o) const {
    NovikovElement r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            const Rational e = e1 + e2;
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                if (c1 * c2 != 0) r.terms_[e] = c1 * c2;
            } else {
                it->second += c1 * c2;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    // Tightest provable floor: unknown tail of x times leading term of y
    // (and symmetrically).  An empty factor with a floor still poisons the
    // product from floor(x) + floor(y) upward... conservatively: if either
    // factor is floored, the best bound uses the other factor's leading
    // exponent (or its floor when no terms are stored).
    std::optional<Rational> f;
    if (floor_) {
        const Rational other = o.terms_.empty()
                                   ? (o.floor_ ? *o.floor_ : Rational(0))
                                   : o.terms_.begin()->first;
        if (o.terms_.empty() && !o.floor_) {
            // exact zero: product is exactly zero, no floor
        } else {
            f = max_floor(f, *floor_ + other);
        }
    }
    if (o.floor_) {
        const Rational self = terms_.empty()
                                  ? (floor_ ? *floor_ : Rational(0))
                                  : terms_.begin()->first;
        if (terms_.empty() && !floor_) {
            // exact zero
        } else {
            f = max_floor(f, *o.floor_ + self);
        }
    }
    r.set_floor(f);
    return r;
}

NovikovElement NovikovElement::scaled(const Rational& c) const {
    NovikovElement r;
    if (c != 0)
        for (const auto& [e, co] : terms_) r.terms_[e] = co * c;
    // Scaling by zero still cannot resurrect knowledge hidden under a floor
    // of an inexact element only if c == 0 makes everything exactly zero;
    // the unknown tail scales to an unknown (possibly zero) tail, so keep
    // the floor unless c == 0 annihilates exactly.
    if (c != 0) r.floor_ = floor_;
    return r;
}

NovikovElement NovikovElement::truncated(const Rational& f) const {
    NovikovElement r(*this);
    r.set_floor(max_floor(floor_, f));
    return r;
}

bool NovikovElement::equal_above_floors(const NovikovElement& a,
                                        const NovikovElement& b) {
    const std::optional<Rational> f = max_floor(a.floor_, b.floor_);
    auto above = [&](const NovikovElement& x) {
        std::map<Rational, Rational> out;
        for (const auto& [e, c] : x.terms_)
            if (!f || e > *f) out[e] = c;
        return out;
    };
    return above(a) == above(b);
}

std::string NovikovElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Rational a = c < 0 ? Rational(-c) : c;
        os << rat_str(a) << "*T^(" << rat_str(e) << ")";
    }
    if (floor_) {
        if (!first) os << " + ";
        os << "O(T^(" << rat_str(*floor_) << "))";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

NovikovElement invert(const NovikovElement& x, long depth) {
    if (depth < 0)
        throw domain_error("inversion depth must be nonnegative");
    const auto [e0, c0] = x.leading(); // throws on zero/ambiguous
    NovikovElement lead_inv = NovikovElement::monomial(Rational(1) / c0, -e0);
    if (x.terms_.size() == 1 && x.is_exact())
        return lead_inv; // monomial: exact inverse

    // x = c0 T^{e0} (1 - s), s = -(x - lead)/lead; 1/x = lead_inv sum s^j.
    NovikovElement rest = x;
    rest.terms_.erase(rest.terms_.begin());
    // Distance from the leading exponent to the next known information.
    Rational next = rest.terms_.empty() ? *rest.floor_ : rest.leading().first;
    const Rational gap = e0 - next;
    NovikovElement s = (-rest) * lead_inv; // leading exponent <= -gap
    NovikovElement geom(Rational(1));
    NovikovElement spow(Rational(1));
    for (long j = 1; j <= depth; ++j) {
        spow = spow * s;
        geom = geom + spow;
    }
    NovikovElement result = lead_inv * geom;
    // Everything at or below e0 - (depth+1)*gap is unknown: the first
    // untracked geometric term contributes there.  Keep any tighter floor
    // already accumulated from the input's own truncation.
    Rational series_floor = -e0 - Rational(depth + 1) * gap;
    result.set_floor(max_floor(result.floor_, series_floor));
    return result;
}

// ---- parsing -------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw parse_error(std::string("expected '") + c + "' in Novikov literal");
    }
    Rational rational() {
        skip_ws();
        std::size_t j = i;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        std::size_t digits = j;
        while (j < s.size() && ((s[j] >= '0' && s[j] <= '9') || s[j] == '/')) ++j;
        if (j == digits)
            throw parse_error("expected a rational in Novikov literal");
        Rational r = parse_rational(s.substr(i, j - i));
        i = j;
        return r;
    }
};

// term := rational ['*' T-part] | T-part | 'O' '(' T-part ')'
// T-part := 'T' '^' '(' rational ')'
Rational parse_tpart(Cursor& c) {
    c.expect('T');
    c.expect('^');
    c.expect('(');
    Rational e = c.rational();
    c.expect(')');
    return e;
}

} // namespace

NovikovElement parse_novikov(const std::string& text) {
    Cursor c{text};
    NovikovElement out;
    bool any = false;
    int sign = 1;
    if (c.eat('-'))
        sign = -1;
    else
        c.eat('+');
    for (;;) {
        if (c.eof()) {
            if (!any) throw parse_error("empty Novikov literal");
            break;
        }
        char p = c.peek();
        if (p == 'O') {
            c.expect('O');
            c.expect('(');
            Rational f = parse_tpart(c);
            c.expect(')');
            if (sign < 0)
                throw parse_error("O(...) cannot carry a sign in a Novikov literal");
            out = out + NovikovElement::big_o(f);
        } else if (p == 'T') {
            Rational e = parse_tpart(c);
            out = out + NovikovElement::monomial(Rational(sign), e);
        } else {
            Rational co = c.rational();
            Rational e(0);
            if (c.eat('*')) e = parse_tpart(c);
            out = out + NovikovElement::monomial(co * sign, e);
        }
        any = true;
        if (c.eof()) break;
        if (c.eat('+'))
            sign = 1;
        else if (c.eat('-'))
            sign = -1;
        else
            throw parse_error("expected '+' or '-' between Novikov terms");
    }
    // "0" parses through the rational branch as coefficient zero.
    return out;
}

// ---- loops ----------------------------------------------------------------

Rational loop_energy(const LoopClass& z, const Rational& alpha) {
    return Rational(z.k) + Rational(2) * alpha * Rational(z.l);
}

Int loop_grading(const LoopClass& z) { return 8 * z.k + 4 * z.l; }

Rational minimal_period_generator(const Rational& alpha) {
    if (!(alpha > 0 && alpha < Rational(1, 2)))
        throw domain_error("holonomy parameter must satisfy 0 < alpha < 1/2");
    return Rational(1) - Rational(4) * alpha;
}

Rational energy_of_grading(const Int& grading, const Int& l, const Rational& alpha) {
    return Rational(grading) / 8 + Rational(l) * (Rational(4) * alpha - 1) / 2;
}

} // namespace ski
