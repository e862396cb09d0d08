#include "bilistab/exact_scalar.hpp"

#include <mpfr.h>

namespace bilistab {

double ExactScalar::to_double() const {
    if (b_ == 0) return to_nearest_double(a_);
    mpfr_t root, acc;
    mpfr_init2(root, 256);
    mpfr_init2(acc, 256);
    mpfr_sqrt_ui(root, 3, MPFR_RNDN);
    mpfr_mul_q(acc, root, b_.get_mpq_t(), MPFR_RNDN);
    mpfr_add_q(acc, acc, a_.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clear(acc);
    mpfr_clear(root);
    return d;
}

std::string ExactScalar::to_string() const {
    if (b_ == 0) return rational_to_string(a_);
    std::string s;
    if (a_ != 0) s = rational_to_string(a_) + " + ";
    s += "(" + rational_to_string(b_) + ")*sqrt(3)";
    return s;
}

}  // namespace bilistab
