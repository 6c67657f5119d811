#include "hslab/exponents.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hslab {

ExponentConfig make_exponents(int n, double s, double q, bool allow_critical) {
    if (n < 1 || n > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (!std::isfinite(s) || !std::isfinite(q))
        throw std::invalid_argument("s and q must be finite");
    if (s <= 0.0 || s >= 0.5 * n)
        throw std::invalid_argument("s must lie in (0, n/2), got s=" + std::to_string(s));
    const double q_crit = 2.0 * n / (n - 2.0 * s);
    if (q <= 2.0) throw std::invalid_argument("q must exceed 2, got q=" + std::to_string(q));
    if (q > q_crit)
        throw std::invalid_argument("q exceeds the critical exponent " + std::to_string(q_crit));
    if (q == q_crit && !allow_critical)
        throw std::invalid_argument("q equals the critical exponent; pass allow_critical");

    ExponentConfig cfg;
    cfg.n = n;
    cfg.s = s;
    cfg.q = q;
    cfg.q_crit = q_crit;
    cfg.beta = n / q - (0.5 * n - s);
    if (!(cfg.beta >= -1e-12 && cfg.beta < s + 1e-12))
        throw std::logic_error("derived beta outside [0, s)");
    if (cfg.beta < 0.0) cfg.beta = 0.0;  // critical case, rounding
    return cfg;
}

}  // namespace hslab
