#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <utility>
#include <tuple>
#include <vector>

#include "elliptic.hpp"
#include "partition.hpp"
#include "wfun.hpp"

namespace ellw {

/// The very-well-poised block of a partition-indexed series with top parameter c:
/// prod_i E(c t^{2-2i} q^{2 mu_i}) / E(c t^{2-2i}) (q t^{2i-2})^{mu_i} times
/// prod_{i<j} (q t^{j-i})_{mu_i-mu_j} (c t^{3-i-j})_{mu_i+mu_j} / ((q t^{j-i-1}) (c t^{2-i-j})).
template <class T>
cplx<T> vwp_block(const Partition& mu, std::size_t n, cplx<T> c, const Nome<T>& F)
{
    using C = cplx<T>;
    C r(1);
    const long N = static_cast<long>(n);
    for (long i = 1; i <= N; ++i) {
        const long mi = mu(i);
        if (mi == 0)
            continue;
        const C ci = c * F.pow_t(2 - 2 * i);
        r *= F.E(ci * F.pow_q(2 * mi)) * F.inv_E(ci) * ipow(F.q * F.pow_t(2 * i - 2), mi);
    }
    for (long i = 1; i <= N; ++i)
        for (long j = i + 1; j <= N; ++j) {
            const long d = mu(i) - mu(j), s = mu(i) + mu(j);
            r *= F.qp(F.q * F.pow_t(j - i), d) * F.inv_qp(F.q * F.pow_t(j - i - 1), d);
            r *= F.qp(c * F.pow_t(3 - i - j), s) * F.inv_qp(c * F.pow_t(2 - i - j), s);
        }
    return r;
}

/// One-variable Jackson coefficient omega_{lambda/mu}(x; r, q, p, t; a, b) over n
/// rows. Zero when mu is not inside lambda. The value does not depend on n once
/// n >= max(l(lambda), l(mu)).
template <class T>
cplx<T> omega_skew_one(cplx<T> x, const Partition& lam, const Partition& mu, std::size_t n, const Params<T>& P)
{
    using C = cplx<T>;
    if (!contains(mu, lam))
        return C(0);
    n = std::max({n, lam.length(), mu.length(), std::size_t{1}});
    const auto F = P.nome();
    const C q = P.q, t = P.t, a = P.a, b = P.b, r = P.r;
    const long N = static_cast<long>(n);
    C v = F.pf_skew(C(1) / x, lam, mu) * F.pf_skew(a * x, lam, mu) * F.inv_pf({q * b * x, q * b / (a * x)}, lam);
    v *= F.pf({q * b * x / r, q * b / (a * x * r)}, mu);
    v *= F.pf({r, b / r * F.pow_t(1 - N)}, mu) * F.inv_pf({q * b / (r * r), q * F.pow_t(N - 1)}, mu);
    v *= vwp_block(mu, n, b / r, F);
    if (!mu.empty())
        v *= w_function(spectral_point(lam, n, q, t), mu,
                        P.with_ab(b * F.pow_t(2 - 2 * N), b / r * F.pow_t(1 - N)));
    return v;
}

/// Cache for the multivariable omega recursion, keyed like WContext.
template <class T = long double>
class OmegaContext {
public:
    using C = cplx<T>;

    explicit OmegaContext(const Params<T>& P) : P_(P) {}

    const Params<T>& params() const noexcept { return P_; }

    C eval(const Point<T>& x, const Partition& lam, const Partition& mu)
    {
        if (x.empty())
            throw dimension_error("omega needs at least one variable");
        if (x != x_) {
            memo_.clear();
            x_ = x;
        }
        const auto [v, mass] = rec(0, lam.normalized(), mu.normalized());
        note_cancellation(mass, v);
        return v;
    }

    /// Value together with the sum of |term| over every branch of the recursion.
    /// The ratio mass/|value| bounds the cancellation in the sum.
    std::pair<C, T> eval_with_mass(const Point<T>& x, const Partition& lam, const Partition& mu)
    {
        eval(x, lam, mu);
        return rec(0, lam.normalized(), mu.normalized());
    }

private:
    // The sum runs over every nu between mu and lambda; unlike W there is no
    // horizontal strip restriction.
    std::pair<C, T> rec(std::size_t first, const Partition& lam, const Partition& mu)
    {
        const std::size_t left = x_.size() - first;
        if (!contains(mu, lam))
            return {C(0), T(0)};
        if (left == 1) {
            const C v = omega_skew_one(x_[first], lam, mu, 0, P_);
            return {v, std::abs(v)};
        }
        auto key = std::make_tuple(lam, mu, left);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        const long k = static_cast<long>(left) - 1;
        const C rk = ipow(P_.r, k);
        const Params<T> sh = P_.with_ab(P_.a * rk * rk, P_.b * rk);
        const C y = x_[first] / rk;
        C v(0);
        T mass(0);
        for (const auto& nu : subpartitions(lam)) {
            if (!contains(mu, nu))
                continue;
            const auto [tail, tail_mass] = rec(first + 1, nu, mu);
            if (tail_mass != T(0)) {
                const C f = omega_skew_one(y, lam, nu, 0, sh);
                v += f * tail;
                mass += std::abs(f) * tail_mass;
            }
        }
        memo_.emplace(std::move(key), std::pair<C, T>{v, mass});
        return {v, mass};
    }

    Params<T> P_;
    Point<T> x_;
    std::map<std::tuple<Partition, Partition, std::size_t>, std::pair<C, T>> memo_;
};

template <class T>
cplx<T> omega_multi(const Point<T>& x, const Partition& lam, const Partition& mu, OmegaContext<T>& ctx)
{
    return ctx.eval(x, lam, mu);
}

/// omega_{lambda/mu}(x; r; a, b) with a throwaway context.
template <class T>
cplx<T> omega_function(const Point<T>& x, const Partition& lam, const Partition& mu, const Params<T>& P)
{
    OmegaContext<T> ctx(P);
    return ctx.eval(x, lam, mu);
}

/// The point x r^delta(m) = (x r^{m-1}, ..., x r, x).
template <class T>
Point<T> r_delta_point(cplx<T> x, std::size_t m, cplx<T> r)
{
    Point<T> z(m);
    for (std::size_t i = 0; i < m; ++i)
        z[i] = x * ipow(r, static_cast<long>(m - 1 - i));
    return z;
}

/// Closed form of omega_{lambda/mu}(x r^delta(m)).
template <class T>
cplx<T> omega_shifted_closed(cplx<T> x, std::size_t m, const Partition& lam, const Partition& mu, std::size_t n,
                             const Params<T>& P)
{
    using C = cplx<T>;
    if (m < 1)
        throw std::invalid_argument("omega_shifted_closed needs m >= 1");
    if (!contains(mu, lam))
        return C(0);
    n = std::max({n, lam.length(), mu.length(), std::size_t{1}});
    const auto F = P.nome();
    const C q = P.q, t = P.t, a = P.a, b = P.b, r = P.r;
    const long N = static_cast<long>(n), M = static_cast<long>(m);
    const C rm1 = ipow(r, M - 1), rm = rm1 * r;
    C v = F.pf_skew(C(1) / x, lam, mu) * F.pf_skew(a * x * rm1, lam, mu);
    v *= F.inv_pf({q * b * rm1 * x, q * b / (a * x)}, lam);
    v *= F.pf({q * b * x / r, q * b / (a * x * rm)}, mu);
    v *= F.pf({rm, q * b * rm1 / r}, lam) * F.inv_pf({q * b / r, r}, lam);
    v *= F.pf({r, b / r * F.pow_t(1 - N)}, mu) * F.inv_pf({q * b / (r * r), q * F.pow_t(N - 1)}, mu);
    v *= vwp_block(mu, n, b / r, F);
    if (!mu.empty())
        v *= w_function(spectral_point(lam, n, q, t), mu,
                        P.with_ab(b * rm1 * F.pow_t(2 - 2 * N), b / r * F.pow_t(1 - N)));
    return v;
}

/// prod_{i<j} fn(i, j, lambda_i, lambda_j) over the row pairs of an n-row partition.
template <class T, class Fn>
cplx<T> pair_product(const Partition& lam, std::size_t n, Fn fn)
{
    cplx<T> r(1);
    for (long i = 1; i <= static_cast<long>(n); ++i)
        for (long j = i + 1; j <= static_cast<long>(n); ++j)
            r *= fn(i, j, static_cast<long>(lam(i)), static_cast<long>(lam(j)));
    return r;
}

/// The diagonal factor P_lambda(b) = prod_{i<j} (t^{j-i+1})_{l_i-l_j} (q b t^{2-i-j})_{l_i+l_j}
/// / ((t^{j-i})_{l_i-l_j} (q b t^{1-i-j})_{l_i+l_j}).
template <class T>
cplx<T> diagonal_factor(const Partition& lam, std::size_t n, cplx<T> b, const Nome<T>& F)
{
    return pair_product<T>(lam, n, [&](long i, long j, long li, long lj) {
        return F.qp(F.pow_t(j - i + 1), li - lj) * F.qp(F.q * b * F.pow_t(2 - i - j), li + lj) *
               F.inv_qp(F.pow_t(j - i), li - lj) * F.inv_qp(F.q * b * F.pow_t(1 - i - j), li + lj);
    });
}

/// The coefficient c_{lambda/mu}(r, a, b) of the expansion W_lambda(x/r; a r^2, b r) = sum_mu c W_mu(x).
template <class T>
cplx<T> c_coefficient(const Partition& lam, const Partition& mu, cplx<T> rr, std::size_t n, const Params<T>& P)
{
    using C = cplx<T>;
    if (lam.length() > n)
        throw dimension_error("c_coefficient needs n >= length of " + lam.str());
    if (!contains(mu, lam))
        return C(0);
    const auto F = P.nome();
    const C q = P.q, t = P.t, a = P.a, b = P.b;
    const long N = static_cast<long>(n);
    auto tp = [&](long k) { return F.pow_t(k); };
    C v = F.pf({rr, a * rr * tp(N - 1)}, lam) * F.inv_pf({q * b * tp(N - 1), q * b / a}, lam);
    v *= F.pf({b, q * b / (a * rr)}, mu) * F.inv_pf({q * tp(N - 1), a * rr * tp(N - 1)}, mu);
    if (!mu.empty())
        v *= w_function(spectral_point(lam, n, q, t), mu, P.with_ab(b * rr * tp(1 - N), b));
    v *= pair_product<T>(lam, n, [&](long i, long j, long li, long lj) {
        return F.qp(tp(j - i + 1), li - lj) * F.qp(q * b * rr * tp(1 + N - i - j), li + lj) *
               F.inv_qp(tp(j - i), li - lj) * F.inv_qp(q * b * rr * tp(N - i - j), li + lj);
    });
    for (long i = 1; i <= N; ++i) {
        const long mi = mu(i);
        if (mi == 0)
            continue;
        const C c = b * tp(1 + N - 2 * i);
        v *= F.E(c * F.pow_q(2 * mi)) * F.inv_E(c) * ipow(q * tp(2 * i - 2), mi);
    }
    v *= pair_product<T>(mu, n, [&](long i, long j, long mi, long mj) {
        const long d = mi - mj, s = mi + mj;
        return F.qp(tp(j - i), d) * F.qp(q * tp(j - i), d) * F.qp(b * q * tp(N - i - j), s) *
               F.qp(b * tp(2 + N - i - j), s) * F.inv_qp(q * tp(j - i - 1), d) * F.inv_qp(tp(j - i + 1), d) *
               F.inv_qp(b * tp(1 + N - i - j), s) * F.inv_qp(b * q * tp(1 + N - i - j), s);
    });
    return v;
}

/// omega_{lambda/mu}(u^{-1}; u; A, B) rebuilt from c_coefficient and the diagonal
/// factors: c_{lambda/mu}(u, A u^{-2} t^{1-n}, B u^{-1} t^{1-n}) P_mu(B/u) / P_lambda(B).
template <class T>
cplx<T> omega_from_c(const Partition& lam, const Partition& mu, cplx<T> u, std::size_t n, const Params<T>& P)
{
    const auto F = P.nome();
    const cplx<T> A = P.a, B = P.b, tn = F.pow_t(1 - static_cast<long>(n));
    const cplx<T> c = c_coefficient(lam, mu, u, n, P.with_ab(A / (u * u) * tn, B / u * tn));
    return c * diagonal_factor(mu, n, B / u, F) / diagonal_factor(lam, n, B, F);
}

/// Closed form of omega_{lambda/lambda}(x) over n rows.
template <class T>
cplx<T> omega_diag_closed(cplx<T> x, const Partition& lam, std::size_t n, const Params<T>& P)
{
    using C = cplx<T>;
    n = std::max({n, lam.length(), std::size_t{1}});
    const auto F = P.nome();
    const C q = P.q, a = P.a, b = P.b, r = P.r;
    const long N = static_cast<long>(n);
    C v = F.pf({q * b * x / r, q * b / (a * r * x)}, lam) * F.inv_pf({q * b * x, q * b / (a * x)}, lam);
    v *= F.pf({b / r * F.pow_t(1 - N), q * b / r}, lam) * F.inv_pf({b * F.pow_t(1 - N), q * b / (r * r)}, lam);
    v *= ipow(r, lam.weight());
    for (long i = 1; i <= N; ++i) {
        v *= F.qp(b * F.pow_t(2 - 2 * i), 2 * lam(i)) * F.inv_qp(b / r * F.pow_t(2 - 2 * i), 2 * lam(i));
        for (long j = i + 1; j <= N; ++j) {
            const long m = lam(i) + lam(j);
            v *= F.qp(b * F.pow_t(2 - i - j), m) * F.inv_qp(b * F.pow_t(3 - i - j), m);
            v *= F.qp(b / r * F.pow_t(3 - i - j), m) * F.inv_qp(b / r * F.pow_t(2 - i - j), m);
        }
    }
    return v;
}

/// Prefactor that turns omega_lambda(z; r; a, b) (z with n entries) into
/// W_lambda(z; a, B t^{1-n}) as r -> t:
/// P_lambda(B) (r, q B r^{-n})_lambda / (r^n, q B / r)_lambda.
template <class T>
cplx<T> limit_prefactor(const Partition& lam, std::size_t n, cplx<T> rr, cplx<T> B, const Nome<T>& F)
{
    const long N = static_cast<long>(n);
    const cplx<T> rn = ipow(rr, N);
    return diagonal_factor(lam, n, B, F) * F.pf({rr, F.q * B / rn}, lam) * F.inv_pf({rn, F.q * B / rr}, lam);
}

/// Prefactor for the one-variable skew limit omega_{lambda/mu}(x; r) -> W_{lambda/mu}(x)
/// as r -> t, over n rows. Valid for l(mu) < n.
template <class T>
cplx<T> skew_limit_prefactor(const Partition& lam, const Partition& mu, std::size_t n, cplx<T> rr, const Params<T>& P)
{
    using C = cplx<T>;
    const auto F = P.nome();
    const C q = P.q, b = P.b;
    const long N = static_cast<long>(n);
    auto tp = [&](long k) { return F.pow_t(k); };
    C v(1);
    for (long i = 1; i <= N; ++i)
        for (long j = i + 1; j <= N; ++j) {
            const long dl = lam(i) - lam(j), sl = lam(i) + lam(j), dm = mu(i) - mu(j), sm = mu(i) + mu(j);
            v *= F.qp(tp(j - i + 1), dl) * F.qp(tp(j - i), dm) * F.qp(q * b * tp(2 - i - j), sl) *
                 F.qp(q * b * tp(-i - j), sm);
            v *= F.inv_qp(tp(j - i), dl) * F.inv_qp(tp(j - i + 1), dm) * F.inv_qp(q * b * tp(1 - i - j), sl) *
                 F.inv_qp(q * b * tp(1 - i - j), sm);
        }
    const C rn = ipow(rr, N);
    v *= F.pf({rr, q * b / rn}, lam) * F.pf({rn, q * b / (rr * rr)}, mu);
    v *= F.inv_pf({rn, q * b / rr}, lam) * F.inv_pf({rr, q * b / (rn * rr)}, mu);
    return v;
}

/// lim_{r->t} of the skew limit prefactor times omega_{lambda/mu}(x; r; a, b).
template <class T>
cplx<T> omega_to_w_limit(cplx<T> x, const Partition& lam, const Partition& mu, std::size_t n, const Params<T>& P,
                         T h = T(1e-2))
{
    PoleThresholdGuard guard(0);
    return circle_limit<T>(
        [&](cplx<T> eps) {
            const cplx<T> rr = P.t * (T(1) + eps);
            return skew_limit_prefactor(lam, mu, n, rr, P) * omega_skew_one(x, lam, mu, n, P.with_r(rr));
        },
        h);
}

} // namespace ellw
