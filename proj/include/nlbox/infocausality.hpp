#pragma once

// Certified evaluation of the information-causality bound. A box of strength
// E violates the bound at level n when h((1+E^n)/2) < 1 - 2^-n. Near the
// threshold both sides agree to hundreds of bits, so the deficit
//   (1 - h) - 2^-n
// is computed cancellation-free (series below) inside outward-rounded
// intervals; the violation verdict is only reported once the enclosure
// excludes zero, doubling the working precision as needed up to 4096 bits.
//
// Series used for P near 1/2 (d = E^n = 2P-1):
//   1 - h((1+d)/2) = (1/ln2) * sum_{k>=1} d^(2k) / (2k(2k-1))

#include <algorithm>
#include <optional>
#include <string>

#include "nlbox/bigfloat.hpp"
#include "nlbox/errors.hpp"

namespace nlbox {

namespace ic_detail {

using iv::Interval;

// Upper bound of max_x -x*log2(x) = 1/(e ln2).
inline BigFloat xlog_max_upper(mpfr_prec_t prec) {
    BigFloat one = BigFloat::from_long(1, prec);
    BigFloat e_lo(prec), ln2_lo(prec), denom(prec), r(prec);
    mpfr_exp(e_lo.raw(), one.raw(), MPFR_RNDD);
    mpfr_const_log2(ln2_lo.raw(), MPFR_RNDD);
    mpfr_mul(denom.raw(), e_lo.raw(), ln2_lo.raw(), MPFR_RNDD);
    mpfr_ui_div(r.raw(), 1, denom.raw(), MPFR_RNDU);
    return r;
}

// Bounds of t(v) = -v*log2(v) at an exact point v in (0, 1].
inline BigFloat xlog_lower(const BigFloat& v, mpfr_prec_t prec) {
    BigFloat l(prec), p(prec);
    mpfr_log2(l.raw(), v.raw(), MPFR_RNDU);
    mpfr_mul(p.raw(), v.raw(), l.raw(), MPFR_RNDU);
    mpfr_neg(p.raw(), p.raw(), MPFR_RNDN);
    return p;
}
inline BigFloat xlog_upper(const BigFloat& v, mpfr_prec_t prec) {
    BigFloat l(prec), p(prec);
    mpfr_log2(l.raw(), v.raw(), MPFR_RNDD);
    mpfr_mul(p.raw(), v.raw(), l.raw(), MPFR_RNDD);
    mpfr_neg(p.raw(), p.raw(), MPFR_RNDN);
    return p;
}

// Enclosure of t over an interval x in [0,1]. t is concave with its maximum
// at 1/e, so the minimum sits at an endpoint; the maximum is capped by the
// global bound when the interval straddles 1/e.
inline Interval xlog_term(const Interval& x, mpfr_prec_t prec) {
    BigFloat zero = BigFloat::from_long(0, prec);
    if (x.hi.is_zero()) return {zero, zero};
    Interval r{zero, zero};
    if (!x.lo.is_zero()) {
        BigFloat c1 = xlog_lower(x.lo, prec);
        BigFloat c2 = xlog_lower(x.hi, prec);
        r.lo = std::min(c1, c2);
        BigFloat u1 = xlog_upper(x.lo, prec);
        BigFloat u2 = xlog_upper(x.hi, prec);
        r.hi = std::max(u1, u2);
    } else {
        r.hi = xlog_upper(x.hi, prec);
    }
    if (x.lo.cmp(0.368) < 0 && x.hi.cmp(0.3678) > 0)
        r.hi = std::max(r.hi, xlog_max_upper(prec));
    if (r.lo.sign() < 0) r.lo = zero;  // t >= 0 on [0,1]
    return r;
}

// h(p) = t(p) + t(1-p) over an interval p in [0,1].
inline Interval entropy_direct(const Interval& p, mpfr_prec_t prec) {
    Interval one = iv::exact_long(1, prec);
    Interval q = iv::sub(one, p, prec);
    return iv::add(xlog_term(p, prec), xlog_term(q, prec), prec);
}

// Enclosure of 1 - h((1+d)/2) via the cancellation-free even series;
// requires 0 <= d and d.hi well below 1 (callers stay under 1/4).
inline Interval one_minus_entropy_series(const Interval& d, mpfr_prec_t prec) {
    Interval d2 = iv::mul(d, d, prec);
    Interval term = d2;  // d^(2k), k = 1
    Interval sum = iv::div_ui(term, 2, prec);
    unsigned long k = 1;
    while (k < 4000) {
        ++k;
        term = iv::mul(term, d2, prec);
        Interval addend = iv::div_ui(term, (2 * k) * (2 * k - 1), prec);
        sum = iv::add(sum, addend, prec);
        if (addend.hi.is_zero()) break;
        if (!sum.lo.is_zero() &&
            mpfr_get_exp(addend.hi.raw()) < mpfr_get_exp(sum.lo.raw()) - (prec + 16))
            break;
    }
    // Geometric tail bound: remaining terms <= term*d2/((2k+2)(2k+1)) / (1-d2).
    if (!term.hi.is_zero()) {
        BigFloat tail(prec), one_minus_d2(prec);
        mpfr_mul(tail.raw(), term.hi.raw(), d2.hi.raw(), MPFR_RNDU);
        mpfr_div_ui(tail.raw(), tail.raw(), (2 * k + 2) * (2 * k + 1), MPFR_RNDU);
        mpfr_ui_sub(one_minus_d2.raw(), 1, d2.hi.raw(), MPFR_RNDD);
        if (one_minus_d2.sign() <= 0) throw DomainError("series argument too close to 1");
        mpfr_div(tail.raw(), tail.raw(), one_minus_d2.raw(), MPFR_RNDU);
        mpfr_add(sum.hi.raw(), sum.hi.raw(), tail.raw(), MPFR_RNDU);
    }
    return iv::mul(sum, iv::inv_ln2(prec), prec);
}

struct IcEvaluation {
    Interval p_k, entropy, bound, deficit;
    bool used_series = false;
};

// Certified pieces for one (E^n, n) pair at one working precision.
inline IcEvaluation evaluate(const Interval& en, long n, mpfr_prec_t prec) {
    IcEvaluation ev;
    Interval one = iv::exact_long(1, prec);
    BigFloat two_neg_n = iv::two_pow_neg(n, prec);
    ev.p_k = iv::div_ui(iv::add(one, en, prec), 2, prec);
    ev.bound = iv::sub(one, iv::exact(two_neg_n), prec);
    if (en.lo.cmp(1.0) == 0 && en.hi.cmp(1.0) == 0) {
        // E^n = 1 exactly: P = 1, h = 0.
        ev.entropy = iv::exact(BigFloat::from_long(0, prec));
        ev.deficit = ev.bound;
    } else if (en.hi.cmp(0.002) < 0) {
        Interval omh = one_minus_entropy_series(en, prec);
        ev.entropy = iv::sub(one, omh, prec);
        ev.deficit = iv::sub(omh, iv::exact(two_neg_n), prec);
        ev.used_series = true;
    } else {
        ev.entropy = entropy_direct(ev.p_k, prec);
        ev.deficit = iv::sub(ev.bound, ev.entropy, prec);
    }
    return ev;
}

inline void check_strength(const BigFloat& E) {
    if (E.sign() < 0 || E.cmp(1.0) > 0) throw DomainError("E must lie in [0,1]");
}

}  // namespace ic_detail

inline constexpr mpfr_prec_t kMaxPrecision = 4096;

// ---------------------------------------------------------------------------
// Public operations

// Binary entropy h(p) = -p log2 p - (1-p) log2 (1-p) at p's precision, with
// the series path taking over within 10^-3 of 1/2.
inline BigFloat binary_entropy(const BigFloat& p) {
    if (p.sign() < 0 || p.cmp(1.0) > 0) throw DomainError("binary_entropy domain is [0,1]");
    if (p.is_zero() || p.cmp(1.0) == 0) return BigFloat::from_long(0, p.prec());
    mpfr_prec_t prec = std::max(p.prec(), kDefaultPrecision) + 16;
    BigFloat d(prec);
    mpfr_mul_2ui(d.raw(), p.raw(), 1, MPFR_RNDN);
    mpfr_sub_ui(d.raw(), d.raw(), 1, MPFR_RNDN);  // exact at widened precision
    mpfr_abs(d.raw(), d.raw(), MPFR_RNDN);
    iv::Interval h;
    if (d.cmp(2e-3) < 0) {
        iv::Interval omh = ic_detail::one_minus_entropy_series(iv::exact(d), prec);
        h = iv::sub(iv::exact_long(1, prec), omh, prec);
    } else {
        h = ic_detail::entropy_direct(iv::exact(p), prec);
    }
    return h.midpoint(p.prec());
}

// P_k = (1 + E^n)/2.
inline BigFloat guess_probability(const BigFloat& E, long n) {
    ic_detail::check_strength(E);
    if (n < 1) throw DomainError("n must be >= 1");
    mpfr_prec_t prec = std::max(E.prec(), kDefaultPrecision);
    BigFloat r(prec);
    mpfr_pow_ui(r.raw(), E.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_add_ui(r.raw(), r.raw(), 1, MPFR_RNDN);
    mpfr_div_2ui(r.raw(), r.raw(), 1, MPFR_RNDN);
    return r;
}

struct ICReport {
    BigFloat E;
    long n = 1;
    BigFloat p_k, entropy, bound, deficit;
    bool violated = false;
    mpfr_prec_t precision_bits = kDefaultPrecision;
};

// Full report with a certified violation flag: the deficit enclosure must
// exclude zero (or have an exactly nonpositive upper end) before the verdict
// is returned; otherwise precision doubles, up to the 4096-bit cap.
inline ICReport ic_report(const BigFloat& E, long n,
                          mpfr_prec_t start_prec = kDefaultPrecision) {
    ic_detail::check_strength(E);
    if (n < 1) throw DomainError("n must be >= 1");
    mpfr_prec_t prec = std::max(start_prec, E.prec());
    for (;;) {
        iv::Interval en = iv::pow_ui(iv::exact(E), static_cast<unsigned long>(n), prec);
        ic_detail::IcEvaluation ev = ic_detail::evaluate(en, n, prec);
        bool is_violated = ev.deficit.strictly_positive();
        bool certain = is_violated || ev.deficit.nonpositive();
        if (certain) {
            ICReport rep;
            rep.E = E;
            rep.n = n;
            rep.p_k = ev.p_k.midpoint(prec);
            rep.entropy = ev.entropy.midpoint(prec);
            rep.bound = ev.bound.midpoint(prec);
            rep.deficit = ev.deficit.midpoint(prec);
            rep.violated = is_violated;
            rep.precision_bits = prec;
            return rep;
        }
        if (prec >= kMaxPrecision)
            throw PrecisionExhausted("deficit sign still ambiguous at " +
                                     std::to_string(kMaxPrecision) + " bits");
        prec = std::min<mpfr_prec_t>(prec * 2, kMaxPrecision);
    }
}

// Smallest n <= n_max with a certified violation, scanning every n (no
// monotonicity assumed) with an incrementally maintained E^n enclosure;
// individual ambiguous points re-evaluate at doubled precision.
inline std::optional<long> minimal_violation_n(const BigFloat& E, long n_max,
                                               mpfr_prec_t start_prec = kDefaultPrecision) {
    ic_detail::check_strength(E);
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    mpfr_prec_t prec = std::max(start_prec, E.prec());
    iv::Interval en = iv::exact_long(1, prec);
    iv::Interval base = iv::exact(E);
    for (long n = 1; n <= n_max; ++n) {
        en = iv::mul(en, base, prec);
        ic_detail::IcEvaluation ev = ic_detail::evaluate(en, n, prec);
        bool violated;
        if (ev.deficit.strictly_positive()) {
            violated = true;
        } else if (ev.deficit.nonpositive()) {
            violated = false;
        } else {
            violated = ic_report(E, n, prec * 2).violated;
        }
        if (violated) return n;
    }
    return std::nullopt;
}

enum class Strength { Classical, Quantum, Superquantum };

inline std::string to_string(Strength s) {
    switch (s) {
        case Strength::Classical: return "classical";
        case Strength::Quantum: return "quantum";
        default: return "superquantum";
    }
}

// Band thresholds |E| <= 1/2 (classical) and |E| <= 1/sqrt2 (quantum), with
// boundary values assigned to the weaker class. The Tsirelson comparison is
// decided exactly by squaring the stored dyadic value.
inline Strength classify_strength(const BigFloat& E) {
    BigFloat a(E.prec());
    mpfr_abs(a.raw(), E.raw(), MPFR_RNDN);
    if (a.cmp(1.0) > 0) throw DomainError("|E| must be <= 1");
    if (a.cmp(0.5) <= 0) return Strength::Classical;
    BigFloat sq(2 * E.prec() + 4);
    mpfr_sqr(sq.raw(), a.raw(), MPFR_RNDN);  // exact at doubled precision
    return sq.cmp(0.5) <= 0 ? Strength::Quantum : Strength::Superquantum;
}

// Scalar inputs: a decimal string, a "num/den" fraction, or the symbolic
// "1/sqrt2" (parsed rounding down so the stored value never exceeds the
// Tsirelson threshold). Parsed once at `prec`; the value is exact thereafter.
inline BigFloat parse_scalar(const std::string& text, mpfr_prec_t prec = kDefaultPrecision) {
    if (text == "1/sqrt2" || text == "1/sqrt(2)") {
        BigFloat x(prec);
        mpfr_sqrt_ui(x.raw(), 2, MPFR_RNDU);
        mpfr_ui_div(x.raw(), 1, x.raw(), MPFR_RNDD);
        return x;
    }
    if (auto slash = text.find('/'); slash != std::string::npos) {
        BigFloat num(prec), den(prec);
        if (mpfr_set_str(num.raw(), text.substr(0, slash).c_str(), 10, MPFR_RNDN) != 0 ||
            mpfr_set_str(den.raw(), text.substr(slash + 1).c_str(), 10, MPFR_RNDN) != 0)
            throw MalformedInput("bad scalar: '" + text + "'");
        if (den.sign() <= 0) throw MalformedInput("scalar denominator must be positive");
        BigFloat r(prec);
        mpfr_div(r.raw(), num.raw(), den.raw(), MPFR_RNDN);
        return r;
    }
    BigFloat x(prec);
    if (text.empty() || mpfr_set_str(x.raw(), text.c_str(), 10, MPFR_RNDN) != 0)
        throw MalformedInput("bad scalar: '" + text + "'");
    return x;
}

}  // namespace nlbox
