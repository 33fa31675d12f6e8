#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <random>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "elliptic.hpp"
#include "partition.hpp"

namespace ellw {

template <class T>
using Point = std::vector<cplx<T>>;

/// H_{lambda/mu}(q,p,t,b) over n rows, with lambda_{n+1} = mu_{n+1} = 0.
/// n is raised to max(l(lambda), l(mu)) if smaller.
template <class T>
cplx<T> h_factor(const Partition& lam, const Partition& mu, const Params<T>& P, std::size_t n = 0)
{
    using C = cplx<T>;
    n = std::max({n, lam.length(), mu.length()});
    const auto F = P.nome();
    const C b = P.b;
    auto Q = [&](long k) { return F.pow_q(k); };
    auto Tt = [&](long k) { return F.pow_t(k); };
    C r(1);
    for (long i = 1; i <= static_cast<long>(n); ++i) {
        for (long j = i + 1; j <= static_cast<long>(n); ++j) {
            const long d = mu(j - 1) - lam(j);
            if (d == 0)
                continue;
            const long Mi = mu(i), Mj1 = mu(j - 1), Li = lam(i), Lj = lam(j);
            r *= F.qp(Q(Mi - Mj1) * Tt(j - i), d) * F.qp(Q(Li + Lj) * Tt(3 - j - i) * b, d);
            r *= F.inv_qp(Q(Mi - Mj1 + 1) * Tt(j - i - 1), d) * F.inv_qp(Q(Li + Lj + 1) * Tt(2 - j - i) * b, d);
            r *= F.qp(Q(Li - Mj1 + 1) * Tt(j - i - 1), d) * F.inv_qp(Q(Li - Mj1) * Tt(j - i), d);
        }
        for (long j = i + 2; j <= static_cast<long>(n) + 1; ++j) {
            const long d = mu(j - 1) - lam(j);
            if (d == 0)
                continue;
            const long Mi = mu(i), Lj = lam(j);
            r *= F.qp(Q(Mi + Lj + 1) * Tt(1 - j - i) * b, d) * F.inv_qp(Q(Mi + Lj) * Tt(2 - j - i) * b, d);
        }
    }
    return r;
}

/// One-variable skew W_{lambda/mu}(x; a, b) over n rows. Zero unless lambda/mu is
/// a horizontal strip.
template <class T>
cplx<T> w_skew_one(cplx<T> x, const Partition& lam, const Partition& mu, const Params<T>& P, std::size_t n = 0)
{
    using C = cplx<T>;
    if (!contains(mu, lam) || !is_horizontal_strip(lam, mu))
        return C(0);
    n = std::max({n, lam.length(), mu.length(), std::size_t{1}});
    const auto F = P.nome();
    const C q = P.q, t = P.t, a = P.a, b = P.b;
    C r = h_factor(lam, mu, P, n);
    r *= F.pf_skew(C(1) / x, lam, mu) * F.pf_skew(a * x, lam, mu);
    r *= F.pf({q * b * x / t, q * b / (a * x * t)}, mu) * F.inv_pf({q * b * x, q * b / (a * x)}, lam);
    for (long i = 1; i <= static_cast<long>(n); ++i) {
        const long Mi = mu(i), Li1 = lam(i + 1);
        const C c = b * F.pow_t(1 - 2 * i);
        r *= F.E(c * F.pow_q(2 * Mi)) * F.inv_E(c);
        r *= F.qp(c, Mi + Li1) * F.inv_qp(b * q * F.pow_t(-2 * i), Mi + Li1);
        r *= F.pow_t(i * (Mi - Li1));
    }
    return r;
}

/// Evaluation cache for the multivariable recursion. Entries are keyed on
/// (lambda, mu, variables remaining) and are tied to one parameter set and one
/// point; evaluating at a different point clears the cache.
template <class T = long double>
class WContext {
public:
    using C = cplx<T>;

    explicit WContext(const Params<T>& P) : P_(P) {}

    const Params<T>& params() const noexcept { return P_; }
    std::size_t cache_size() const noexcept { return memo_.size(); }

    C eval(const Point<T>& x, const Partition& lam, const Partition& mu)
    {
        if (x.empty())
            throw dimension_error("W needs at least one variable");
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
    std::pair<C, T> rec(std::size_t first, const Partition& lam, const Partition& mu)
    {
        const std::size_t left = x_.size() - first;
        if (!contains(mu, lam))
            return {C(0), T(0)};
        if (left == 1) {
            const C v = w_skew_one(x_[first], lam, mu, P_, 1);
            return {v, std::abs(v)};
        }
        auto key = std::make_tuple(lam, mu, left);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        const long l = static_cast<long>(left) - 1;
        const auto F = P_.nome();
        const Params<T> sh = P_.with_ab(P_.a * F.pow_t(2 * l), P_.b * F.pow_t(l));
        const C y = x_[first] * F.pow_t(-l);
        C v(0);
        T mass(0);
        for (const auto& nu : horizontal_strips(lam)) {
            if (!contains(mu, nu))
                continue;
            const auto [tail, tail_mass] = rec(first + 1, nu, mu);
            if (tail_mass != T(0)) {
                const C f = w_skew_one(y, lam, nu, sh, static_cast<std::size_t>(l) + 1);
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
cplx<T> w_multi(const Point<T>& x, const Partition& lam, const Partition& mu, WContext<T>& ctx)
{
    return ctx.eval(x, lam, mu);
}

/// W_lambda(x; a, b) with a throwaway context.
template <class T>
cplx<T> w_function(const Point<T>& x, const Partition& lam, const Params<T>& P)
{
    WContext<T> ctx(P);
    return ctx.eval(x, lam, Partition());
}

/// Skew W_{lambda/mu}(x; a, b) with a throwaway context.
template <class T>
cplx<T> w_function(const Point<T>& x, const Partition& lam, const Partition& mu, const Params<T>& P)
{
    WContext<T> ctx(P);
    return ctx.eval(x, lam, mu);
}

/// Closed form of W_lambda at its own spectral point q^lambda t^delta(n).
template <class T>
cplx<T> normalization(const Partition& lam, std::size_t n, const Params<T>& P)
{
    using C = cplx<T>;
    if (lam.length() > n)
        throw dimension_error("normalization needs n >= length of " + lam.str());
    const auto F = P.nome();
    const C q = P.q, a = P.a, b = P.b;
    const long N = static_cast<long>(n);
    auto t = [&](long k) { return F.pow_t(k); };
    C r(1);
    for (long k = 1; k <= N; ++k) {
        const long lk = lam(k);
        r *= F.qp(q * b * t(N - k), lk) * F.qp(q * t(N - k), lk) * F.qp(a * t(2 * N - 2 * k), 2 * lk);
        r *= F.inv_qp((a / b) * t(N - k), lk) * F.inv_qp(a * t(N - k), lk) * F.inv_qp(q * b * t(N + 1 - 2 * k), 2 * lk);
        r *= t((N + 1 - 2 * k) * lk);
    }
    r *= ipow(a / (q * b), lam.weight());
    for (long i = 1; i <= N; ++i)
        for (long j = i + 1; j <= N; ++j) {
            const long d = lam(i) - lam(j), s = lam(i) + lam(j);
            r *= F.qp(q * t(j - i - 1), d) * F.qp(a * t(2 * N - i - j), s);
            r *= F.inv_qp(q * t(j - i), d) * F.inv_qp(a * t(1 + 2 * N - i - j), s);
        }
    return r;
}

/// The factor turning W_lambda into the alternative normalisation W*_lambda.
template <class T>
cplx<T> w_star_prefactor(const Partition& lam, std::size_t n, const Params<T>& P)
{
    using C = cplx<T>;
    const auto F = P.nome();
    const C qb = P.q * P.b;
    C r(1);
    for (long i = 1; i <= static_cast<long>(n); ++i)
        for (long j = i + 1; j <= static_cast<long>(n); ++j) {
            const long d = lam(i) - lam(j), s = lam(i) + lam(j);
            const long e = static_cast<long>(n) - i - j;
            r *= F.qp(F.pow_t(j - i), d) * F.qp(qb * F.pow_t(e), s);
            r *= F.inv_qp(F.pow_t(j - i + 1), d) * F.inv_qp(qb * F.pow_t(e + 1), s);
        }
    return r;
}

template <class T>
cplx<T> w_star(const Point<T>& x, const Partition& lam, WContext<T>& ctx)
{
    return w_star_prefactor(lam, x.size(), ctx.params()) * ctx.eval(x, lam, Partition());
}

template <class T>
cplx<T> w_star(const Point<T>& x, const Partition& lam, const Params<T>& P)
{
    WContext<T> ctx(P);
    return w_star(x, lam, ctx);
}

namespace detail {
// prod_i (1/x_i, a x_i)_k / (qb x_i, qb/(a x_i))_k
template <class T>
cplx<T> x_block(const Point<T>& x, long k, const Params<T>& P)
{
    using C = cplx<T>;
    const auto F = P.nome();
    const C qb = P.q * P.b;
    C r(1);
    for (const C& xi : x)
        r *= F.qp(C(1) / xi, k) * F.qp(P.a * xi, k) * F.inv_qp(qb * xi, k) * F.inv_qp(qb / (P.a * xi), k);
    return r;
}

template <class T>
Point<T> scaled(const Point<T>& x, cplx<T> c)
{
    Point<T> y(x);
    for (auto& v : y)
        v *= c;
    return y;
}
} // namespace detail

/// Closed form of W_{k^n}(x), the rectangular case of the reduction law.
template <class T>
cplx<T> w_rectangle(const Point<T>& x, int k, const Params<T>& P)
{
    using C = cplx<T>;
    const auto F = P.nome();
    const long n = static_cast<long>(x.size());
    C r(1);
    for (long j = 1; j <= n / 2; ++j)
        r *= F.qp(P.q * P.b * F.pow_t(n - 2 * j), 2 * k) * F.inv_qp(P.q * P.b * F.pow_t(-1 - n + 2 * j), 2 * k);
    return r * detail::x_block(x, k, P);
}

/// Right side of the reduction law: peels k full columns off lambda (needs lambda_n >= k).
template <class T>
cplx<T> w_reduction_rhs(const Point<T>& x, const Partition& lam, int k, const Params<T>& P)
{
    const std::size_t n = x.size();
    if (lam.length() > n)
        throw dimension_error("reduction: more parts than variables");
    if (k < 0 || lam(n) < k)
        throw std::invalid_argument("reduction needs 0 <= k <= lambda_n");
    std::vector<int> rest(n);
    for (std::size_t i = 1; i <= n; ++i)
        rest[i - 1] = lam(i) - k;
    const auto F = P.nome();
    const Params<T> sh = P.with_ab(P.a * F.pow_q(2 * k), P.b * F.pow_q(2 * k));
    return w_rectangle(x, k, P) * w_function(detail::scaled(x, F.pow_q(-k)), Partition(rest), sh);
}

/// Right side of the reversal law in the W* normalisation. The left side is
/// w_star(x, complement(lambda, N, n)).
template <class T>
cplx<T> w_reversal_rhs(const Point<T>& x, const Partition& lam, int N, const Params<T>& P)
{
    using C = cplx<T>;
    const std::size_t n = x.size();
    const auto F = P.nome();
    const Partition box = rectangle(N, n);
    const C top = w_star_prefactor(box, n, P) * w_rectangle(x, N, P);
    const Params<T> sh = P.with_ab(P.a / (P.b * P.b) * F.pow_q(-2 * N), F.pow_q(-2 * N) / P.b);
    const C inner = w_star(detail::scaled(x, P.b * F.pow_q(N)), lam, sh);
    return top * ipow(P.q * P.b / P.a, 2 * lam.weight()) * inner;
}

/// W_lambda(1/x; 1/q, p, 1/t, 1/a, 1/b).
template <class T>
cplx<T> w_inversion_lhs(const Point<T>& x, const Partition& lam, const Params<T>& P)
{
    using C = cplx<T>;
    Params<T> inv = P;
    inv.q = C(1) / P.q;
    inv.t = C(1) / P.t;
    inv.a = C(1) / P.a;
    inv.b = C(1) / P.b;
    Point<T> y(x);
    for (auto& v : y)
        v = C(1) / v;
    return w_function(y, lam, inv);
}

template <class T>
cplx<T> w_inversion_rhs(const Point<T>& x, const Partition& lam, const Params<T>& P)
{
    const long w = lam.weight(), nl = lam.n_lambda(), n = static_cast<long>(x.size());
    const auto F = P.nome();
    return ipow(P.a, -2 * w) * ipow(P.b, 2 * w) * F.pow_q(2 * w) * F.pow_t(2 * nl - 2 * (n - 1) * w) *
           w_function(x, lam, P);
}

/// W_lambda(x_hat, t^{k-1}, ..., t, 1) with x_hat the given n-k variables.
template <class T>
cplx<T> w_stability_lhs(const Point<T>& xhat, const Partition& lam, int k, const Params<T>& P)
{
    Point<T> x(xhat);
    for (int i = 0; i < k; ++i)
        x.push_back(P.nome().pow_t(k - 1 - i));
    return w_function(x, lam, P);
}

/// W_lambda(x_hat t^{-k}; a t^{2k}, b t^k).
template <class T>
cplx<T> w_stability_rhs(const Point<T>& xhat, const Partition& lam, int k, const Params<T>& P)
{
    const auto F = P.nome();
    return w_function(detail::scaled(xhat, F.pow_t(-k)), lam, P.with_ab(P.a * F.pow_t(2 * k), P.b * F.pow_t(k)));
}

/// W_lambda times prod_i (qb x_i, qb/(a x_i))_{lambda_1} / (1/x_i, a x_i)_{lambda_1}.
template <class T>
cplx<T> w_tilde(const Point<T>& x, const Partition& lam, const Params<T>& P)
{
    return w_function(x, lam, P) / detail::x_block(x, lam(1), P);
}

/// The point b^{-1} q^{-nu^r} t^delta(n) = (b^{-1} q^{-nu_n} t^{n-1}, ..., b^{-1} q^{-nu_1}).
template <class T>
Point<T> tilde_point(const Partition& nu, std::size_t n, const Params<T>& P)
{
    const auto F = P.nome();
    Point<T> x(n);
    for (std::size_t i = 1; i <= n; ++i)
        x[i - 1] = F.pow_q(-nu(n + 1 - i)) * F.pow_t(static_cast<long>(n - i)) / P.b;
    return x;
}

/// W_tilde at a point where W itself has poles, as the mean of W_tilde over
/// x (1 + eps d) with eps on a small circle and d a fixed direction.
template <class T>
cplx<T> w_tilde_limit(const Point<T>& x0, const Point<T>& dir, const Partition& lam, const Params<T>& P,
                      T eps = T(1e-3))
{
    PoleThresholdGuard guard(0);
    auto at = [&](cplx<T> e) {
        Point<T> x(x0);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] *= cplx<T>(1) + e * dir[i];
        return w_tilde(x, lam, P);
    };
    return circle_limit<T>(at, eps);
}

/// Worst normalised magnitudes found by the two vanishing scans.
template <class T>
struct VanishingScan {
    T spectral = 0; ///< max |W_lambda(q^nu t^delta)| / scale over nu in nu_max, lambda not in nu
    T tilde = 0;    ///< max |W_tilde(b^{-1} q^{-nu^r} t^delta)| / scale over nu in lambda_1^n, nu not in lambda
};

/// Runs both vanishing scans for W_lambda in n variables. Scales are the largest
/// value of the same expression at the non-vanishing points of the scan.
template <class T, class Rng>
VanishingScan<T> vanishing_scan(const Partition& lam, const Params<T>& P, const Partition& nu_max, std::size_t n,
                                Rng& rng)
{
    VanishingScan<T> out;
    if (lam.length() > n)
        throw dimension_error("vanishing scan: more parts than variables");

    T zero_max = 0, scale = 0;
    for (const auto& nu : subpartitions(nu_max)) {
        if (nu.length() > n)
            continue;
        T v = std::abs(w_function(spectral_point(nu, n, P.q, P.t), lam, P));
        if (contains(lam, nu))
            scale = std::max(scale, v);
        else
            zero_max = std::max(zero_max, v);
    }
    if (scale == 0)
        scale = std::abs(normalization(lam, n, P));
    out.spectral = zero_max / scale;

    if (lam.empty())
        return out;
    std::uniform_real_distribution<double> mod(0.5, 1.5), ph(0, 2 * 3.14159265358979323846);
    Point<T> dir(n);
    for (auto& d : dir)
        d = std::polar<T>(mod(rng), ph(rng));
    T tz = 0, ts = 0;
    for (const auto& nu : subpartitions(rectangle(lam(1), n))) {
        T v = std::abs(w_tilde_limit(tilde_point(nu, n, P), dir, lam, P));
        if (contains(nu, lam))
            ts = std::max(ts, v);
        else
            tz = std::max(tz, v);
    }
    out.tilde = ts > 0 ? tz / ts : tz;
    return out;
}

/// True when both vanishing scans stay below tol.
template <class T>
bool vanishing_certificate(const Partition& lam, const Params<T>& P, const Partition& nu_max, std::size_t n,
                           T tol = T(1e-8), std::uint64_t seed = 1)
{
    std::mt19937_64 rng(seed);
    auto s = vanishing_scan(lam, P, nu_max, n, rng);
    return s.spectral < tol && s.tilde < tol;
}

/// Outcome of a single-variable pole-structure fit.
template <class T>
struct PoleFit {
    T residual = 0;  ///< max relative misfit at the fitting and the fresh points
    T condition = 0; ///< condition number of the least-squares matrix
};

namespace detail {
template <class T>
PoleFit<T> least_squares_fit(const std::vector<std::vector<cplx<T>>>& rows, const std::vector<cplx<T>>& y,
                             std::size_t n_fit)
{
    using M = Eigen::Matrix<cplx<T>, Eigen::Dynamic, Eigen::Dynamic>;
    using V = Eigen::Matrix<cplx<T>, Eigen::Dynamic, 1>;
    const std::size_t cols = rows.front().size();
    M A(n_fit, cols);
    V rhs(n_fit);
    for (std::size_t i = 0; i < n_fit; ++i) {
        for (std::size_t j = 0; j < cols; ++j)
            A(i, j) = rows[i][j];
        rhs(i) = y[i];
    }
    Eigen::JacobiSVD<M> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    PoleFit<T> out;
    out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<T>::infinity();
    V c = svd.solve(rhs);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        cplx<T> fit(0);
        for (std::size_t j = 0; j < cols; ++j)
            fit += rows[i][j] * c(j);
        out.residual = std::max(out.residual, std::abs(fit - y[i]) / std::abs(y[i]));
    }
    return out;
}
} // namespace detail

/// Checks that x -> W_lambda(x, rest) lies in the span of h_j(x) / D(x), where
/// D(x) = prod_{m=1}^{lambda_1} E(b q^m x) E(b q^m / (a x)) and the h_j are
/// lambda_1 + 1 products of BC_1-symmetric theta pairs E(u x) E(u / (a x)) with
/// random u. At p = 0 the span is the polynomial one of constants plus simple
/// poles, so literal selects the basis {1, 1/E(b q^m x), 1/E(b q^m / (a x))}.
template <class T, class Rng>
PoleFit<T> pole_fit(const Partition& lam, const Point<T>& rest, const Params<T>& P, Rng& rng, bool literal = false)
{
    using C = cplx<T>;
    const auto F = P.nome();
    const int L = lam(1);
    std::uniform_real_distribution<double> mod(0.5, 1.5), xmod(0.6, 1.4), ph(0, 2 * 3.14159265358979323846);
    std::vector<std::vector<C>> us(L + 1, std::vector<C>(L));
    for (auto& u : us)
        for (auto& v : u)
            v = std::polar<T>(mod(rng), ph(rng));

    auto basis = [&](C x) {
        std::vector<C> row;
        if (literal) {
            row.push_back(C(1));
            for (int m = 1; m <= L; ++m)
                row.push_back(F.inv_E(P.b * F.pow_q(m) * x));
            for (int m = 1; m <= L; ++m)
                row.push_back(F.inv_E(P.b * F.pow_q(m) / (P.a * x)));
            return row;
        }
        C D(1);
        for (int m = 1; m <= L; ++m)
            D *= F.E(P.b * F.pow_q(m) * x) * F.E(P.b * F.pow_q(m) / (P.a * x));
        for (const auto& u : us) {
            C h(1);
            for (const C& v : u)
                h *= F.E(v * x) * F.E(v / (P.a * x));
            row.push_back(h / D);
        }
        return row;
    };

    const std::size_t n_fit = 2 * L + 1, n_fresh = 3;
    std::vector<std::vector<C>> rows;
    std::vector<C> y;
    for (std::size_t k = 0; k < n_fit + n_fresh; ++k) {
        C x = std::polar<T>(xmod(rng), ph(rng));
        Point<T> pt{x};
        pt.insert(pt.end(), rest.begin(), rest.end());
        rows.push_back(basis(x));
        y.push_back(w_function(pt, lam, P));
    }
    return detail::least_squares_fit(rows, y, n_fit);
}

} // namespace ellw
