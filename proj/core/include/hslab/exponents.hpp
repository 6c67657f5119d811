#pragma once

namespace hslab {

// Parameter bundle for the weighted inequality
//   S_q * || |x|^{-beta} u ||_q^2  <=  || D^{s/2} u ||_2^2
// with beta tied to (n, s, q) by  n/q - beta = n/2 - s.
struct ExponentConfig {
    int n;          // spatial dimension, 1..3
    double s;       // operator order, 0 < s < n/2
    double q;       // norm exponent, 2 < q <= q_crit
    double beta;    // weight exponent, derived
    double q_crit;  // critical exponent 2n/(n-2s)
};

// Validates the ranges and derives beta and q_crit.
// q == q_crit is admitted only with allow_critical (oracle runs);
// throws std::invalid_argument otherwise.
ExponentConfig make_exponents(int n, double s, double q, bool allow_critical = false);

}  // namespace hslab
