#include "ultrachase/valuation.hpp"

#include <map>
#include <sstream>

namespace ultrachase {

std::string NormValue::to_string() const {
    if (!positive_) return "0";
    return "p^" + ultrachase::to_string(exp_);
}

NormValue nv_between(const NormValue& lo, const NormValue& hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("nv_between: need lo < hi, got " + lo.to_string() +
                                    " vs " + hi.to_string());
    }
    if (lo.is_zero()) return NormValue::pos(hi.exponent() - 1);
    Rational mid = (lo.exponent() + hi.exponent()) / 2;
    return NormValue::pos(std::move(mid));
}

Scalar Scalar::monomial(Rational q, Rational c) {
    Scalar s;
    if (c != 0) s.terms_.push_back(Term{std::move(q), std::move(c)});
    return s;
}

Scalar Scalar::from_terms(std::vector<Term> terms) {
    std::map<Rational, Rational> acc;
    for (auto& t : terms) acc[t.q] += t.c;
    Scalar s;
    for (auto& [q, c] : acc) {
        if (c != 0) s.terms_.push_back(Term{q, c});
    }
    return s;
}

NormValue Scalar::norm() const {
    if (terms_.empty()) return NormValue::zero();
    return NormValue::pos(-terms_.front().q);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    Scalar out;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->q < ib->q)) {
            out.terms_.push_back(*ia++);
        } else if (ia == a.terms_.end() || ib->q < ia->q) {
            out.terms_.push_back(*ib++);
        } else {
            Rational c = ia->c + ib->c;
            if (c != 0) out.terms_.push_back(Scalar::Term{ia->q, std::move(c)});
            ++ia;
            ++ib;
        }
    }
    return out;
}

Scalar Scalar::operator-() const {
    Scalar out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back(Term{t.q, -t.c});
    return out;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    std::map<Rational, Rational> acc;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            acc[ta.q + tb.q] += ta.c * tb.c;
        }
    }
    Scalar out;
    for (auto& [q, c] : acc) {
        if (c != 0) out.terms_.push_back(Scalar::Term{q, c});
    }
    return out;
}

std::string Scalar::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        if (t.c != 1 || t.q == 0) os << ultrachase::to_string(t.c);
        if (t.q != 0) {
            if (t.c != 1) os << "*";
            os << "t^" << ultrachase::to_string(t.q);
        }
    }
    return os.str();
}

} // namespace ultrachase
