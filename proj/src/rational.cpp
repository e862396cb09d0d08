#include "bilistab/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>

#include "bilistab/errors.hpp"

namespace bilistab {

BigRational double_to_rational(double x) {
    if (!std::isfinite(x)) {
        throw ContractViolation("double_to_rational: value must be finite");
    }
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);  // exact for finite doubles
    return q;
}

double to_nearest_double(const BigRational& q) {
    // mpq_get_d truncates; go through a 53-bit MPFR value so the single
    // rounding is to-nearest.
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return d;
}

BigRational parse_decimal_rational(std::string_view text) {
    auto fail = [&] {
        throw ContractViolation("not a decimal number: '" + std::string(text) + "'");
    };
    size_t i = 0;
    const size_t n = text.size();
    bool negative = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool saw_digit = false;
    for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        digits += text[i];
        saw_digit = true;
    }
    if (i < n && text[i] == '.') {
        ++i;
        for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            digits += text[i];
            ++frac_digits;
            saw_digit = true;
        }
    }
    if (!saw_digit) fail();
    long exponent = 0;
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            exp_neg = text[i] == '-';
            ++i;
        }
        if (i >= n) fail();
        long e = 0;
        for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            e = e * 10 + (text[i] - '0');
            if (e > 1000000) fail();
        }
        exponent = exp_neg ? -e : e;
    }
    if (i != n) fail();

    mpz_class mantissa(digits.empty() ? "0" : digits, 10);
    if (negative) mantissa = -mantissa;
    const long ten_power = exponent - frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(ten_power)));
    BigRational q;
    if (ten_power >= 0) {
        q = BigRational(mantissa * scale);
    } else {
        q = BigRational(mantissa, scale);
    }
    q.canonicalize();
    return q;
}

std::string rational_to_string(const BigRational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace bilistab
