#pragma once

#include <vector>

#include "charsum/chebyshev.hpp"

namespace charsum {

// Positive root of e^xi = 1 + u*xi, u > 1.  Bracketed Newton with bisection
// fallback, initial guess log(u log u).
struct XiSolver {
    double tol = 1e-13;
    int max_iter = 200;
    double solve(double u) const;
};

double xi(double u);

struct RhoResult {
    double value;       // rho(u); may underflow to 0 for large u
    double log_value;   // log rho(u), finite throughout the covered range
    bool approximate;   // true beyond tail_switch (asymptotic surrogate regime)
};

// Piecewise Chebyshev representation of the Dickman-de Bruijn function.
// Piece j covers [j, j+1] as rho(u) = exp(log_scale[j]) * p_j(u), with
// p_j(j) = 1, so the per-piece polynomials stay O(1) and the rapid decay
// lives entirely in log_scale.  Pieces are produced by integrating the
// delay equation u rho'(u) = -rho(u-1) one unit interval at a time.
class RhoEvaluator {
public:
    struct Options {
        double max_u = 400.0;       // last knot covered by polynomial pieces
        double tail_switch = 300.0; // beyond this, rho() reports the asymptotic surrogate
        double tol = 1e-12;
        int degree = 48;
    };

    RhoEvaluator() : RhoEvaluator(Options{}) {}
    explicit RhoEvaluator(Options opt);

    RhoResult rho(double u) const;
    double operator()(double u) const { return rho(u).value; }
    double log_rho(double u) const { return rho(u).log_value; }

    // rho'(u) from the piecewise representation (not via the delay relation,
    // which is what the test suite checks it against).  Exact 0 for u < 1,
    // domain error at the u = 1 kink.
    double deriv(double u) const;

    // int_B^infty rho(u) du
    double tail_integral(double B) const;

    // |rho(u+v)/rho(u) - 1| / (|v| log(u+1)); 0 when v = 0.
    double perturb_ratio(double u, double v) const;

    double max_u() const { return opt_.max_u; }
    double tail_switch() const { return opt_.tail_switch; }
    double tol() const { return opt_.tol; }
    int piece_count() const { return static_cast<int>(pieces_.size()); }

    // Diagnostics: evaluate piece j at u (u need not lie in [j, j+1]).
    double eval_piece(int j, double u) const;

    // log of the u-(u...) shaped surrogate used past the covered range
    static double log_rho_asymptotic(double u);

private:
    Options opt_;
    std::vector<cheb::Series> pieces_;      // p_j on [j, j+1]
    std::vector<cheb::Series> derivs_;      // p_j'
    std::vector<cheb::Series> antis_;       // int_j^u p_j
    std::vector<double> log_scale_;         // log rho(j)
    std::vector<double> suffix_integral_;   // int_j^infty rho, one per knot
    double tail_beyond_max_ = 0.0;
};

}  // namespace charsum
