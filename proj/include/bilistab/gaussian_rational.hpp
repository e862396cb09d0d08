#pragma once

#include <string>

#include "bilistab/rational.hpp"

namespace bilistab {

/// Exact complex number re + im*i with rational components (an element of
/// Q + Qi). Number system of the exact oracle for complex products.
struct GaussianRational {
    BigRational re;
    BigRational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}

    GaussianRational conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianRational operator+(const GaussianRational& x, const GaussianRational& y) {
        return {x.re + y.re, x.im + y.im};
    }
    friend GaussianRational operator-(const GaussianRational& x, const GaussianRational& y) {
        return {x.re - y.re, x.im - y.im};
    }
    friend GaussianRational operator-(const GaussianRational& x) { return {-x.re, -x.im}; }
    friend GaussianRational operator*(const GaussianRational& x, const GaussianRational& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    GaussianRational& operator+=(const GaussianRational& y) {
        re += y.re;
        im += y.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& y) {
        re -= y.re;
        im -= y.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& y) { return *this = *this * y; }

    friend bool operator==(const GaussianRational& x, const GaussianRational& y) {
        return x.re == y.re && x.im == y.im;
    }
    friend bool operator!=(const GaussianRational& x, const GaussianRational& y) {
        return !(x == y);
    }
};

inline std::string to_string(const GaussianRational& z) {
    return rational_to_string(z.re) + " + " + rational_to_string(z.im) + "i";
}

}  // namespace bilistab
