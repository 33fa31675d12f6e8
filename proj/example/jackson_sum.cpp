// Both sides of the one-dimensional Jackson sum for growing length, then a
// short randomized run of the multivariable version through the harness.

#include <cstdio>

#include "ellw/ellw.hpp"

int main()
{
    ellw::Params<long double> P;
    P.q = std::polar(0.4L, 0.2L);
    P.p = std::polar(0.2L, -0.8L);
    P.t = std::polar(0.5L, 0.3L);
    P.a = std::polar(0.9L, 1.2L);
    P.b = std::polar(1.1L, -0.5L);
    const std::complex<long double> z(0.8L, 0.3L), s(1.2L, 0.7L);

    for (long m = 0; m <= 6; ++m) {
        const auto [lhs, rhs] = ellw::jackson_1d_sides(z, s, m, P);
        std::printf("m=%ld  lhs %+.14Le%+.14Lei  rhs %+.14Le%+.14Lei\n", m, lhs.real(), lhs.imag(), rhs.real(),
                    rhs.imag());
    }

    auto cfg = ellw::default_config("w-jackson");
    cfg.trials = 5;
    cfg.seed = 2024;
    const auto rep = ellw::run_identity(cfg);
    std::printf("w-jackson: %s, max residual %.2e over %zu trials\n", rep.passed ? "passed" : "not passed",
                rep.max_residual, rep.trials.size());
    return ellw::exit_code(rep);
}
