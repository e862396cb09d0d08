#pragma once

#include <string>

#include "bilistab/rational.hpp"

namespace bilistab {

/// Element of the field Q(sqrt(3)): value a + b*sqrt(3) with exact rational
/// a, b. This is the smallest field containing every coefficient of the
/// built-in decompositions, so decomposition identities can be checked with
/// no tolerance at all.
class ExactScalar {
public:
    ExactScalar() : a_(0), b_(0) {}
    ExactScalar(long value) : a_(value), b_(0) {}  // NOLINT(google-explicit-constructor)
    explicit ExactScalar(BigRational rational) : a_(std::move(rational)), b_(0) {}
    ExactScalar(BigRational a, BigRational b) : a_(std::move(a)), b_(std::move(b)) {}

    static ExactScalar fraction(long num, long den) {
        BigRational q(num, den);
        q.canonicalize();
        return ExactScalar(std::move(q));
    }
    /// (num/den) * sqrt(3)
    static ExactScalar sqrt3_times(long num, long den) {
        BigRational q(num, den);
        q.canonicalize();
        return ExactScalar(BigRational(0), std::move(q));
    }

    const BigRational& rational_part() const { return a_; }
    const BigRational& sqrt3_part() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// Nearest double to a + b*sqrt(3), evaluated with 256-bit intermediate
    /// precision and one final rounding.
    double to_double() const;

    std::string to_string() const;

    friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
        return {x.a_ + y.a_, x.b_ + y.b_};
    }
    friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
        return {x.a_ - y.a_, x.b_ - y.b_};
    }
    friend ExactScalar operator-(const ExactScalar& x) { return {-x.a_, -x.b_}; }
    // (a + b r)(c + d r) = (ac + 3bd) + (ad + bc) r  with r = sqrt(3)
    friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
        return {x.a_ * y.a_ + 3 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
    }
    ExactScalar& operator+=(const ExactScalar& y) {
        a_ += y.a_;
        b_ += y.b_;
        return *this;
    }
    ExactScalar& operator-=(const ExactScalar& y) {
        a_ -= y.a_;
        b_ -= y.b_;
        return *this;
    }
    ExactScalar& operator*=(const ExactScalar& y) { return *this = *this * y; }

    friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }

private:
    BigRational a_;
    BigRational b_;
};

}  // namespace bilistab
