#pragma once

#include <complex>

namespace electra {

using cplx = std::complex<double>;

/// log Gamma(z) on the principal branch away from the poles (Lanczos, g = 7).
cplx log_gamma(cplx z);
cplx gamma(cplx z);

/// Riemann zeta for s != 1 by Euler-Maclaurin summation. The cut-off grows
/// with |Im s|, so the cost is O(|Im s|).
cplx zeta(cplx s);

}  // namespace electra
