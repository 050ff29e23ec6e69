#pragma once

#include "charsum/common.hpp"

namespace charsum {

// The section-5.1 oscillatory logarithmic sums.  sign = +1 or -1 selects
// e(+alpha n) or e(-alpha n) throughout; everything commutes with sign flip
// via complex conjugation.

// sum_{n <= 1/alpha} (1 - e(sign*alpha*n))/n, exact finite sum
cplx head_sum(double alpha, int sign);

// modulus of the sub-sum over n <= 1/(alpha |log alpha|), for the
// small-head lemma ratio (caller divides by 1/|log alpha|)
double head_prefix_modulus(double alpha, int sign);

struct TailResult {
    cplx value;              // sum_{n > 1/alpha} e(sign*alpha*n)/n
    double remainder_bound;  // bound on the Abel-acceleration truncation
    double cutoff;           // the |log alpha|^c / alpha split point
    cplx beyond_cutoff;      // sum over n > cutoff, same acceleration
    double beyond_bound;
};
TailResult tail_sum(double alpha, int sign, double c = 5.0);

// sum_{n > N} e(sign*alpha*n)/n by direct summation to ~mu/(2 sin pi alpha)
// then an iterated-Abel boundary series; remainder bound is returned.
struct AccelTail {
    cplx value;
    double bound;
};
AccelTail exp_log_tail(double alpha, int sign, double N);

// sum_{n > N} e(sign*alpha*n)/n by plain truncation at `terms` terms, with its
// partial-summation remainder bound; the slow reference path
AccelTail exp_log_tail_direct(double alpha, int sign, double N, std::uint64_t terms);

struct MainConstant {
    cplx value;                 // head - tail
    cplx target;                // log(2 pi) + gamma -+ i pi/2
    double normalized_residual; // |value - target| / (alpha |log alpha|)
};
MainConstant main_constant_residual(double alpha, int sign);

struct FractionalIntegral {
    cplx value;       // int_Y^inf {t} e(sign*alpha*t)/t dt (numerically truncated)
    double envelope;  // 1 + 1/(alpha Y)
    double ratio;     // |value| / envelope
    double tail_bound;
};
FractionalIntegral fractional_integral_check(double alpha, int sign, double Y);

}  // namespace charsum
