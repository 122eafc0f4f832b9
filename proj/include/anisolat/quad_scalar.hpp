// quad_scalar.hpp -- exact arithmetic in the real quadratic field Q(sqrt(d)).
//
// A QuadScalar is a + b*sqrt(d) with rational a, b and a fixed squarefree
// integer d >= 0.  Canonical form: b == 0 implies d == 1, and d in {0, 1}
// is folded into the rational part, so every rational value has exactly one
// representation.  Mixing two values with different irrational radicands is
// a contract violation and throws.
#pragma once

#include "anisolat/rational.hpp"

#include <string>

namespace anisolat {

class QuadScalar {
  public:
    QuadScalar() : a_(0), b_(0), d_(1) {}
    QuadScalar(long v) : a_(v), b_(0), d_(1) {}           // NOLINT(google-explicit-constructor)
    QuadScalar(const Int& v) : a_(v), b_(0), d_(1) {}     // NOLINT(google-explicit-constructor)
    QuadScalar(const Rat& v) : a_(v), b_(0), d_(1) {      // NOLINT(google-explicit-constructor)
        a_.canonicalize();  // callers may pass values in non-lowest terms
    }
    QuadScalar(const Rat& a, const Rat& b, long d);

    static QuadScalar sqrt_of(long d) { return QuadScalar(Rat(0), Rat(1), d); }

    const Rat& rational_part() const { return a_; }
    const Rat& radical_coeff() const { return b_; }
    long radicand() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    // Exact value when rational; throws otherwise.
    const Rat& rational_value() const;

    // Exact sign in {-1, 0, +1}, decided by comparing a^2 against b^2*d.
    int sign() const;
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    QuadScalar operator-() const { return QuadScalar(-a_, -b_, d_, 0); }
    QuadScalar conjugate() const { return QuadScalar(a_, -b_, d_, 0); }

    QuadScalar& operator+=(const QuadScalar& y);
    QuadScalar& operator-=(const QuadScalar& y);
    QuadScalar& operator*=(const QuadScalar& y);
    QuadScalar& operator/=(const QuadScalar& y);

    friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
    friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
    friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
    friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

    friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
    }
    friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }
    friend bool operator<(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() >= 0; }

    // Nearest double within relative error 2^-precision_bits (then one final
    // rounding to double).  precision_bits <= 52 keeps total error < 2^-51.
    double to_double(int precision_bits = 52) const;

    std::string to_string() const;

  private:
    // Unchecked fast path for internal construction (tag disambiguates).
    QuadScalar(Rat a, Rat b, long d, int) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (b_ == 0) d_ = 1;
    }
    void merge_radicand(const QuadScalar& y);

    Rat a_, b_;
    long d_;
};

Int quad_floor(const QuadScalar& x);
Int quad_ceil(const QuadScalar& x);

// Rational bounds r <= x (resp. r >= x), tight to ~2^-40 relative slack.
Rat rat_below(const QuadScalar& x);
Rat rat_above(const QuadScalar& x);

// A rational u >= 0 with u*u >= v.  Requires v >= 0.
Rat ceil_sqrt_quad(const QuadScalar& v);

// Parses "p/q", "p/q+r/s*sqrt(d)", "r/s*sqrt(d)", "sqrt(d)" with signs and
// optional whitespace.  Throws std::invalid_argument on malformed input.
QuadScalar parse_quad(const std::string& text);

}  // namespace anisolat
