#pragma once

// Value-semantic wrapper over MPFR scalars plus a small outward-rounded
// interval layer. Every interval operation rounds the lower endpoint down and
// the upper endpoint up, so computed enclosures are certified: if an
// enclosure excludes 0, the sign of the enclosed quantity is proven at the
// working precision.

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>

#include "nlbox/errors.hpp"

namespace nlbox {

inline constexpr mpfr_prec_t kDefaultPrecision = 300;

class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_double(double d, mpfr_prec_t prec = kDefaultPrecision) {
        BigFloat x(std::max<mpfr_prec_t>(prec, 53));
        mpfr_set_d(x.v_, d, MPFR_RNDN);  // exact, prec >= 53
        return x;
    }
    static BigFloat from_long(long n, mpfr_prec_t prec = kDefaultPrecision) {
        BigFloat x(prec);
        mpfr_set_si(x.v_, n, MPFR_RNDN);
        return x;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string to_string(int significant_digits = 40) const {
        char fmt[32];
        std::snprintf(fmt, sizeof(fmt), "%%.%dRg", significant_digits);
        int need = mpfr_snprintf(nullptr, 0, fmt, v_);
        std::string out(static_cast<std::size_t>(need) + 1, '\0');
        mpfr_snprintf(out.data(), out.size(), fmt, v_);
        out.resize(static_cast<std::size_t>(need));
        return out;
    }

    friend bool operator==(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) == 0;
    }
    friend bool operator<(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) {
        return mpfr_cmp(a.v_, b.v_) <= 0;
    }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }

    int cmp(double d) const { return mpfr_cmp_d(v_, d); }

  private:
    mpfr_t v_;
};

namespace iv {

// Closed interval [lo, hi]; invariant lo <= hi.
struct Interval {
    BigFloat lo, hi;

    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    bool strictly_positive() const { return lo.sign() > 0; }
    bool nonpositive() const { return hi.sign() <= 0; }

    BigFloat midpoint(mpfr_prec_t prec) const {
        BigFloat m(prec);
        mpfr_add(m.raw(), lo.raw(), hi.raw(), MPFR_RNDN);
        mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
        return m;
    }
};

inline Interval exact(const BigFloat& x) { return {x, x}; }

inline Interval exact_long(long n, mpfr_prec_t prec) {
    return exact(BigFloat::from_long(n, prec));
}

// 2^-n, exactly representable at any precision.
inline BigFloat two_pow_neg(long n, mpfr_prec_t prec) {
    BigFloat x(prec);
    mpfr_set_ui_2exp(x.raw(), 1, -n, MPFR_RNDN);
    return x;
}

inline Interval add(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r{BigFloat(prec), BigFloat(prec)};
    mpfr_add(r.lo.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDD);
    mpfr_add(r.hi.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDU);
    return r;
}

inline Interval sub(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r{BigFloat(prec), BigFloat(prec)};
    mpfr_sub(r.lo.raw(), a.lo.raw(), b.hi.raw(), MPFR_RNDD);
    mpfr_sub(r.hi.raw(), a.hi.raw(), b.lo.raw(), MPFR_RNDU);
    return r;
}

// General sign handling: min/max over the four endpoint products, each
// rounded in the appropriate direction.
inline Interval mul(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    const BigFloat* as[2] = {&a.lo, &a.hi};
    const BigFloat* bs[2] = {&b.lo, &b.hi};
    Interval r{BigFloat(prec), BigFloat(prec)};
    BigFloat t(prec);
    bool first = true;
    for (const BigFloat* x : as)
        for (const BigFloat* y : bs) {
            mpfr_mul(t.raw(), x->raw(), y->raw(), MPFR_RNDD);
            if (first || t < r.lo) mpfr_set(r.lo.raw(), t.raw(), MPFR_RNDD);
            mpfr_mul(t.raw(), x->raw(), y->raw(), MPFR_RNDU);
            if (first || r.hi < t) mpfr_set(r.hi.raw(), t.raw(), MPFR_RNDU);
            first = false;
        }
    return r;
}

inline Interval div_ui(const Interval& a, unsigned long d, mpfr_prec_t prec) {
    Interval r{BigFloat(prec), BigFloat(prec)};
    mpfr_div_ui(r.lo.raw(), a.lo.raw(), d, MPFR_RNDD);
    mpfr_div_ui(r.hi.raw(), a.hi.raw(), d, MPFR_RNDU);
    return r;
}

// Requires a.lo >= 0 (x^n is monotone on the nonnegatives).
inline Interval pow_ui(const Interval& a, unsigned long n, mpfr_prec_t prec) {
    Interval r{BigFloat(prec), BigFloat(prec)};
    mpfr_pow_ui(r.lo.raw(), a.lo.raw(), n, MPFR_RNDD);
    mpfr_pow_ui(r.hi.raw(), a.hi.raw(), n, MPFR_RNDU);
    return r;
}

// Requires a.lo > 0.
inline Interval log2(const Interval& a, mpfr_prec_t prec) {
    Interval r{BigFloat(prec), BigFloat(prec)};
    mpfr_log2(r.lo.raw(), a.lo.raw(), MPFR_RNDD);
    mpfr_log2(r.hi.raw(), a.hi.raw(), MPFR_RNDU);
    return r;
}

// Enclosure of 1/ln 2.
inline Interval inv_ln2(mpfr_prec_t prec) {
    BigFloat ln2_lo(prec), ln2_hi(prec);
    mpfr_const_log2(ln2_lo.raw(), MPFR_RNDD);
    mpfr_const_log2(ln2_hi.raw(), MPFR_RNDU);
    Interval r{BigFloat(prec), BigFloat(prec)};
    mpfr_ui_div(r.lo.raw(), 1, ln2_hi.raw(), MPFR_RNDD);
    mpfr_ui_div(r.hi.raw(), 1, ln2_lo.raw(), MPFR_RNDU);
    return r;
}

}  // namespace iv

}  // namespace nlbox
