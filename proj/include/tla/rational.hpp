#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace tla {

// Exact rational number. Always canonical: positive denominator, lowest terms.
// Negative values are representable (utilities can be negative); nonnegativity
// of bids and payments is enforced where those are constructed.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long value) : q_(value, 1) {}  // NOLINT: implicit by design, allows `x * 3`
    Rational(long num, long den);

    // Accepts "p", "p/q" (q > 0) or a decimal string with at most
    // max_decimal_digits fractional digits, all parsed exactly.
    // Returns nullopt on anything else.
    static std::optional<Rational> parse(std::string_view text);
    static constexpr int max_decimal_digits = 9;

    std::string str() const;  // "p/q", or just "p" when the denominator is 1
    std::string numerator_str() const;
    std::string denominator_str() const;
    double to_double() const;  // for human-readable traces only, never for logic

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_negative() const { return sgn(q_) < 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);  // throws DomainError on zero divisor

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

    // 2^-exponent, used for bisection tolerances.
    static Rational pow2_inverse(unsigned exponent);

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}

    mpq_class q_;
};

}  // namespace tla
