// Prints W_lambda at its spectral point next to the closed-form normalization,
// for every lambda of weight at most 4 in two variables.

#include <cstdio>

#include "ellw/ellw.hpp"

int main()
{
    ellw::Params<long double> P;
    P.q = std::polar(0.35L, 0.4L);
    P.p = std::polar(0.12L, 1.1L);
    P.t = std::polar(0.45L, -0.6L);
    P.a = std::polar(0.8L, 0.9L);
    P.b = std::polar(1.3L, -0.3L);

    for (const auto& lam : ellw::partitions_up_to(4, 2)) {
        const auto x = ellw::spectral_point(lam, 2, P.q, P.t);
        const auto w = ellw::w_function(x, lam, P);
        const auto nrm = ellw::normalization(lam, 2, P);
        std::printf("%-6s W = %+.12Lf%+.12Lfi   N = %+.12Lf%+.12Lfi   rel %.1Le\n", ("(" + lam.str() + ")").c_str(),
                    w.real(), w.imag(), nrm.real(), nrm.imag(), ellw::relative_residual(w, nrm));
    }
}
