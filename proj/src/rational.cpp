#include "tla/rational.hpp"

#include <cctype>
#include <ostream>

#include "tla/errors.hpp"

namespace tla {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw DomainError("rational denominator must be nonzero");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
        if (text.empty()) return std::nullopt;
    }

    mpz_class num;
    mpz_class den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view p = text.substr(0, slash);
        std::string_view q = text.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) return std::nullopt;
        num.set_str(std::string(p), 10);
        den.set_str(std::string(q), 10);
        if (den == 0) return std::nullopt;
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
        if (frac.size() > static_cast<size_t>(max_decimal_digits)) return std::nullopt;
        num.set_str(std::string(whole) + std::string(frac), 10);
        den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    } else {
        if (!all_digits(text)) return std::nullopt;
        num.set_str(std::string(text), 10);
        den = 1;
    }

    if (negative) num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::numerator_str() const { return q_.get_num().get_str(); }

std::string Rational::denominator_str() const { return q_.get_den().get_str(); }

double Rational::to_double() const { return q_.get_d(); }

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational& Rational::operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational Rational::pow2_inverse(unsigned exponent) {
    mpz_class den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exponent);
    mpq_class q(1, den);
    q.canonicalize();
    return Rational(std::move(q));
}

}  // namespace tla
