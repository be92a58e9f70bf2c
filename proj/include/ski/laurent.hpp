#pragma once

// Laurent polynomials in one variable t with rational coefficients and
// integer exponents (Alexander polynomials and friends).

#include <map>
#include <string>

#include "ski/rational.hpp"

namespace ski {

class Laurent {
public:
    Laurent() = default;
    explicit Laurent(const Rational& c) { set(0, c); }

    void set(long e, const Rational& c) {
        if (c == 0)
            terms_.erase(e);
        else
            terms_[e] = c;
    }
    void add(long e, const Rational& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0)
                terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<long, Rational>& terms() const { return terms_; }
    Rational coeff(long e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    long min_exp() const { return terms_.begin()->first; }
    long max_exp() const { return terms_.rbegin()->first; }

    Laurent operator+(const Laurent& o) const {
        Laurent r(*this);
        for (const auto& [e, c] : o.terms_)
            r.add(e, c);
        return r;
    }
    Laurent operator-(const Laurent& o) const {
        Laurent r(*this);
        for (const auto& [e, c] : o.terms_)
            r.add(e, -c);
        return r;
    }
    Laurent operator*(const Laurent& o) const {
        Laurent r;
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_)
                r.add(e1 + e2, c1 * c2);
        return r;
    }
    bool operator==(const Laurent& o) const { return terms_ == o.terms_; }

    Rational eval(const Rational& x) const; // x != 0
    bool symmetric() const;                 // p(t) == p(1/t)

    // Equality up to multiplication by +- t^k.
    static bool equal_up_to_units(const Laurent& a, const Laurent& b);

    // Deterministic rendering, exponents descending: "t^2 - t + 1 - t^-1".
    std::string str() const;

private:
    std::map<long, Rational> terms_;
};

} // namespace ski
