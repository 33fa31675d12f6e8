#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "elliptic.hpp"
#include "omega.hpp"
#include "partition.hpp"
#include "wfun.hpp"

namespace ellw {

/// Finite lower-triangular array indexed by pairs mu inside lambda inside cap.
/// Absent entries read as zero.
template <class T = long double>
class TriangularArray {
public:
    using C = cplx<T>;

    explicit TriangularArray(Partition cap) : cap_(cap.normalized()), index_(subpartitions(cap_)) {}

    const Partition& cap() const noexcept { return cap_; }
    /// Every partition inside the cap, largest first.
    const std::vector<Partition>& index() const noexcept { return index_; }
    std::size_t nonzeros() const noexcept { return entries_.size(); }

    C operator()(const Partition& lam, const Partition& mu) const
    {
        auto it = entries_.find({lam.normalized(), mu.normalized()});
        return it == entries_.end() ? C(0) : it->second;
    }

    void set(const Partition& lam, const Partition& mu, C v)
    {
        if (!contains(lam, cap_) || !contains(mu, lam))
            throw dimension_error("triangular array entry (" + lam.str() + " | " + mu.str() +
                                  ") is outside the cap " + cap_.str() + " or above the diagonal");
        entries_[{lam.normalized(), mu.normalized()}] = v;
    }

    static TriangularArray identity(const Partition& cap)
    {
        TriangularArray u(cap);
        for (const auto& l : u.index_)
            u.set(l, l, C(1));
        return u;
    }

    /// Fills every admissible entry through f(lambda, mu).
    template <class Fn>
    static TriangularArray from(const Partition& cap, Fn f)
    {
        TriangularArray u(cap);
        for (const auto& l : u.index_)
            for (const auto& m : subpartitions(l))
                u.set(l, m, f(l, m));
        return u;
    }

    /// Dense array with entries of modulus in [0.5, 1.5] and uniform phase.
    template <class Rng>
    static TriangularArray random(const Partition& cap, Rng& rng)
    {
        std::uniform_real_distribution<double> mod(0.5, 1.5), ph(0, 2 * 3.14159265358979323846);
        return from(cap, [&](const Partition&, const Partition&) { return std::polar<T>(mod(rng), ph(rng)); });
    }

private:
    Partition cap_;
    std::vector<Partition> index_;
    std::map<std::pair<Partition, Partition>, C> entries_;
};

/// (u v)_{lambda mu} = sum_{mu in nu in lambda} u_{lambda nu} v_{nu mu}.
template <class T>
TriangularArray<T> tri_multiply(const TriangularArray<T>& u, const TriangularArray<T>& v)
{
    if (!(u.cap() == v.cap()))
        throw dimension_error("tri_multiply: caps " + u.cap().str() + " and " + v.cap().str() + " differ");
    return TriangularArray<T>::from(u.cap(), [&](const Partition& l, const Partition& m) {
        cplx<T> s(0);
        for (const auto& nu : subpartitions(l))
            if (contains(m, nu))
                s += u(l, nu) * v(nu, m);
        return s;
    });
}

/// Builds beta = m alpha and gamma = delta m and returns the relative residual of
/// sum_lambda gamma_{nu lambda} alpha_{lambda tau} = sum_lambda delta_{nu lambda} beta_{lambda tau}.
template <class T>
T bailey_transform_check(const TriangularArray<T>& alpha, const TriangularArray<T>& delta,
                         const TriangularArray<T>& m, const Partition& tau, const Partition& nu)
{
    if (!contains(tau, nu) || !contains(nu, alpha.cap()))
        throw dimension_error("bailey transform needs tau inside nu inside the cap");
    const auto beta = tri_multiply(m, alpha);
    const auto gamma = tri_multiply(delta, m);
    cplx<T> lhs(0), rhs(0);
    for (const auto& lam : subpartitions(nu)) {
        if (!contains(tau, lam))
            continue;
        lhs += gamma(nu, lam) * alpha(lam, tau);
        rhs += delta(nu, lam) * beta(lam, tau);
    }
    return relative_residual(lhs, rhs);
}

/// Terminating very-well-poised series {k+1}Phi_k on BC_n with args = (a_1, ..., a_{k-1}):
/// sum over mu in lambda in nu of K_lambda(a_1) (a_1 t^{1-n}, a_2, ..., a_{k-3})_lambda
/// / (q t^{n-1}, q a_1/a_2, ..., q a_1/a_{k-3})_lambda
/// W_lambda(q^nu t^delta; a_{k-2} t^{2-2n}, a_1 t^{1-n}) W_mu(q^lambda t^delta; a_1 t^{2-2n}, a_{k-1} t^{1-n}).
template <class T>
cplx<T> phi_series(const std::vector<cplx<T>>& args, const Partition& nu, const Partition& mu, std::size_t n,
                   const Params<T>& P)
{
    using C = cplx<T>;
    if (args.size() < 4)
        throw std::invalid_argument("phi_series needs k >= 5, i.e. at least four parameters");
    if (!contains(mu, nu))
        throw domain_error("phi_series: mu " + mu.str() + " is not inside nu " + nu.str());
    if (nu.length() > n)
        throw dimension_error("phi_series: nu has more than n parts");
    const auto F = P.nome();
    const long N = static_cast<long>(n);
    const C a1 = args.front(), akm2 = args[args.size() - 2], akm1 = args.back();
    const Point<T> top = spectral_point(nu, n, P.q, P.t);
    WContext<T> wtop(P.with_ab(akm2 * F.pow_t(2 - 2 * N), a1 * F.pow_t(1 - N)));
    const Params<T> lower = P.with_ab(a1 * F.pow_t(2 - 2 * N), akm1 * F.pow_t(1 - N));
    C total(0);
    T mass(0);
    for (const auto& lam : subpartitions(nu)) {
        if (!contains(mu, lam))
            continue;
        C term = vwp_block(lam, n, a1, F);
        term *= F.pf(a1 * F.pow_t(1 - N), lam) * F.inv_pf(P.q * F.pow_t(N - 1), lam);
        for (std::size_t i = 1; i + 2 < args.size(); ++i)
            term *= F.pf(args[i], lam) * F.inv_pf(P.q * a1 / args[i], lam);
        term *= wtop.eval(top, lam, Partition());
        if (!mu.empty())
            term *= w_function(spectral_point(lam, n, P.q, P.t), mu, lower);
        total += term;
        mass += std::abs(term);
    }
    note_cancellation(mass, total);
    return total;
}

/// Balancing condition of a very-well-poised parameter list (odd k):
/// a_2 a_3 ... a_{k-2} = a_1^{(k-3)/2} q^{(k-5)/2}. Returns the relative mismatch.
template <class T>
T balance_defect(const std::vector<cplx<T>>& args, cplx<T> q)
{
    const long k = static_cast<long>(args.size()) + 1;
    if (k % 2 == 0)
        return std::numeric_limits<T>::infinity();
    cplx<T> prod(1);
    for (std::size_t i = 1; i + 1 < args.size(); ++i)
        prod *= args[i];
    return relative_residual(prod, ipow(args.front(), (k - 3) / 2) * ipow(q, (k - 5) / 2));
}

template <class T>
bool is_balanced(const std::vector<cplx<T>>& args, cplx<T> q, T tol = T(1e-12))
{
    return balance_defect(args, q) < tol;
}

/// W_lambda(x/s; a t^{-2n} s^2, b t^{-n} s) with n = x.size().
template <class T>
cplx<T> w_jackson_lhs(const Point<T>& x, const Partition& lam, cplx<T> s, const Params<T>& P)
{
    const auto F = P.nome();
    const long n = static_cast<long>(x.size());
    return w_function(detail::scaled(x, cplx<T>(1) / s), lam,
                      P.with_ab(P.a * F.pow_t(-2 * n) * s * s, P.b * F.pow_t(-n) * s));
}

/// Expansion of the left side over mu inside lambda.
template <class T>
cplx<T> w_jackson_rhs(const Point<T>& x, const Partition& lam, cplx<T> s, const Params<T>& P)
{
    using C = cplx<T>;
    const auto F = P.nome();
    const long n = static_cast<long>(x.size());
    const C q = P.q, a = P.a, b = P.b;
    auto tp = [&](long k) { return F.pow_t(k); };
    C pre = F.pf({s, a * s * tp(-n - 1)}, lam) * F.inv_pf({q * b / P.t, q * b * tp(n) / a}, lam);
    pre *= pair_product<T>(lam, x.size(), [&](long i, long j, long li, long lj) {
        return F.qp(tp(j - i + 1), li - lj) * F.qp(q * b * s * tp(1 - i - j), li + lj) * F.inv_qp(tp(j - i), li - lj) *
               F.inv_qp(q * b * s * tp(-i - j), li + lj);
    });
    const Point<T> top = spectral_point(lam, x.size(), q, P.t);
    const Params<T> Ptop = P.with_ab(b * s * tp(1 - 2 * n), b * tp(-n));
    WContext<T> wx(P.with_ab(a * tp(-2 * n), b * tp(-n)));
    C total(0);
    T mass(0);
    for (const auto& mu : subpartitions(lam)) {
        C term = F.pf({b * tp(-n), q * b * tp(n) / (a * s)}, mu) * F.inv_pf({q * tp(n - 1), a * s * tp(-n - 1)}, mu);
        for (long i = 1; i <= n; ++i) {
            const long mi = mu(i);
            if (mi == 0)
                continue;
            const C c = b * tp(1 - 2 * i);
            term *= F.E(c * F.pow_q(2 * mi)) * F.inv_E(c) * ipow(q * tp(2 * i - 2), mi);
        }
        term *= pair_product<T>(mu, x.size(), [&](long i, long j, long mi, long mj) {
            const long d = mi - mj, sm = mi + mj;
            return F.qp(tp(j - i), d) * F.qp(q * tp(j - i), d) * F.inv_qp(q * tp(j - i - 1), d) *
                   F.inv_qp(tp(j - i + 1), d) * F.qp(b * q * tp(-i - j), sm) * F.qp(b * tp(2 - i - j), sm) *
                   F.inv_qp(b * tp(1 - i - j), sm) * F.inv_qp(q * b * tp(1 - i - j), sm);
        });
        if (term == C(0))
            continue;
        if (!mu.empty())
            term *= w_function(top, mu, Ptop) * wx.eval(x, mu, Partition());
        total += term;
        mass += std::abs(term);
    }
    note_cancellation(mass, total);
    return pre * total;
}

/// Both sides of the one-dimensional Jackson sum of length m in z and s.
template <class T>
std::pair<cplx<T>, cplx<T>> jackson_1d_sides(cplx<T> z, cplx<T> s, long m, const Params<T>& P)
{
    using C = cplx<T>;
    const auto F = P.nome();
    const C q = P.q, a = P.a, b = P.b;
    C lhs(1);
    for (C v : {a * z * s, s / z, q * b, q * b / a})
        lhs *= F.qp(v, m);
    for (C v : {q * b / (a * z), q * b * z, a * s, s})
        lhs *= F.inv_qp(v, m);
    C rhs(0);
    T mass(0);
    const C qm = F.pow_q(m);
    for (long k = 0; k <= m; ++k) {
        C term = F.E(F.pow_q(2 * k) * b) * F.inv_E(b) * F.pow_q(k);
        for (C v : {a * z, C(1) / z, b, q * b / (a * s), b * s * qm, C(1) / qm})
            term *= F.qp(v, k);
        for (C v : {q * b / (a * z), q * b * z, q, a * s, q / (qm * s), b * q * qm})
            term *= F.inv_qp(v, k);
        rhs += term;
        mass += std::abs(term);
    }
    note_cancellation(mass, rhs);
    return {lhs, rhs};
}

template <class T>
T jackson_1d_check(cplx<T> z, cplx<T> s, long m, const Params<T>& P)
{
    auto [l, r] = jackson_1d_sides(z, s, m, P);
    return relative_residual(l, r);
}

/// Both sides of the W symmetry (duality) identity exchanging (lambda, a) and
/// (nu, a'), with k = a' t^{n-1}/b and h = a t^{n-1}/b.
template <class T>
std::pair<cplx<T>, cplx<T>> duality_sides(const Partition& lam, const Partition& nu, std::size_t n, cplx<T> a_prime,
                                          const Params<T>& P)
{
    using C = cplx<T>;
    const auto F = P.nome();
    const long N = static_cast<long>(n);
    const C q = P.q, a = P.a, b = P.b, ap = a_prime;
    auto tp = [&](long k) { return F.pow_t(k); };
    const C k = ap * tp(N - 1) / b, h = a * tp(N - 1) / b;
    auto side = [&](const Partition& x_part, const Partition& idx, C kk, C aa, C other) {
        C v = w_function(detail::scaled(spectral_point(x_part, n, q, P.t), C(1) / kk), idx,
                         P.with_ab(kk * kk * aa, kk * b));
        v *= F.pf({q * b * tp(N - 1), q * b / aa}, idx) * F.inv_pf({kk, kk * aa * tp(N - 1)}, idx);
        v *= pair_product<T>(idx, n, [&](long i, long j, long li, long lj) {
            return F.qp(tp(j - i), li - lj) * F.qp(q * other * tp(2 * N - i - j - 1), li + lj) *
                   F.inv_qp(tp(j - i + 1), li - lj) * F.inv_qp(q * other * tp(2 * N - i - j), li + lj);
        });
        return v;
    };
    return {side(nu, lam, k, a, ap), side(lam, nu, h, ap, a)};
}

template <class T>
T duality_check(const Partition& lam, const Partition& nu, std::size_t n, cplx<T> a_prime, const Params<T>& P)
{
    auto [l, r] = duality_sides(lam, nu, n, a_prime, P);
    return relative_residual(l, r);
}

/// Parameters of the BC_n 10phi9 transformation.
template <class T>
struct Phi109Args {
    cplx<T> b, c, d, e, f, g;
    cplx<T> gamma(cplx<T> q) const { return q * b * b / (c * d * e); }
};

/// Both sides of the BC_n 10phi9 transformation for tau inside nu.
template <class T>
std::pair<cplx<T>, cplx<T>> phi10_9_sides(const Phi109Args<T>& A, const Partition& nu, const Partition& tau,
                                          std::size_t n, const Params<T>& P)
{
    using C = cplx<T>;
    const auto F = P.nome();
    const C q = P.q, b = A.b, c = A.c, d = A.d, e = A.e, f = A.f, g = A.g;
    const C gam = A.gamma(q), top = q * gam * b / (f * g);
    C lhs = F.pf({q * b / g, q * b / f, q * gam, q * gam / (f * g)}, nu) *
            F.inv_pf({q * b, q * b / (f * g), q * gam / f, q * gam / g}, nu);
    lhs *= F.pf({gam * c / b, gam * e / b}, tau) * F.inv_pf({c, e}, tau);
    lhs *= phi_series<T>({b, c, d, e, f, g, top, b / d}, nu, tau, n, P);
    const C rhs = phi_series<T>({gam, gam * c / b, gam * d / b, gam * e / b, f, g, top, b / d}, nu, tau, n, P);
    return {lhs, rhs};
}

template <class T>
T phi10_9_transform_check(const Phi109Args<T>& A, const Partition& nu, const Partition& tau, std::size_t n,
                          const Params<T>& P)
{
    auto [l, r] = phi10_9_sides(A, nu, tau, n, P);
    return relative_residual(l, r);
}

/// Both sides of the multivariable omega-Jackson sum for z with k = z.size() entries
/// and lambda of length at most n. Uses P.r and s.
template <class T>
std::pair<cplx<T>, cplx<T>> omega_jackson_sides(const Point<T>& z, const Partition& lam, cplx<T> s, std::size_t n,
                                                const Params<T>& P)
{
    using C = cplx<T>;
    const auto F = P.nome();
    const C q = P.q, a = P.a, b = P.b, r = P.r;
    const long k = static_cast<long>(z.size()), N = static_cast<long>(n);
    const C r1k = ipow(r, 1 - k), rk1 = ipow(r, k - 1);
    const Point<T> base{ipow(r, -k)};
    auto om = [&](const Point<T>& x, const Partition& l, C aa, C bb) {
        return omega_function(x, l, Partition(), P.with_ab(aa, bb));
    };
    C lhs = F.pf({q * b / a, q * b}, lam) * F.inv_pf({a * s, s}, lam);
    lhs *= om(detail::scaled(z, C(1) / s), lam, a * r1k * s * s, b * r1k * s) / om(base, lam, q * b * s * rk1, b * s);

    OmegaContext<T> oz(P.with_ab(a * r1k, b * r1k));
    const Point<T> top = spectral_point(lam, n, q, P.t);
    const Params<T> Ptop = P.with_ab(b * s * F.pow_t(2 - 2 * N), b * F.pow_t(1 - N));
    C rhs(0);
    T mass(0);
    for (const auto& mu : subpartitions(lam)) {
        C term = vwp_block(mu, n, b, F) * F.pf({b * F.pow_t(1 - N), q * b / (a * s)}, mu) *
                 F.inv_pf({q * F.pow_t(N - 1), a * s}, mu);
        if (!mu.empty())
            term *= w_function(top, mu, Ptop);
        term *= oz.eval(z, mu, Partition()) / om(base, mu, q * b * rk1, b);
        rhs += term;
        mass += std::abs(term);
    }
    note_cancellation(mass, rhs);
    return {lhs, rhs};
}

template <class T>
T omega_jackson_check(const Point<T>& z, const Partition& lam, cplx<T> s, std::size_t n, const Params<T>& P)
{
    auto [l, r] = omega_jackson_sides(z, lam, s, n, P);
    return relative_residual(l, r);
}

/// r -> t limit of the omega-Jackson numerator for k = n = z.size():
/// lim P_lambda-type prefactor times omega_lambda(z/s; r; a r^{1-n} s^2, b r^{1-n} s),
/// taken as a circle mean over r = t(1 + eps), |eps| = h. Compare with
/// w_jackson_rhs(z, lambda, s) at (a t^{n+1}, b t).
template <class T>
cplx<T> omega_jackson_degeneration(const Point<T>& z, const Partition& lam, cplx<T> s, const Params<T>& P,
                                   T h = T(1e-2))
{
    const auto F = P.nome();
    const std::size_t n = z.size();
    const long N = static_cast<long>(n);
    PoleThresholdGuard guard(0);
    return circle_limit<T>(
        [&](cplx<T> eps) {
            const cplx<T> rr = P.t * (T(1) + eps);
            const cplx<T> r1n = ipow(rr, 1 - N);
            const cplx<T> B = P.b * r1n * s;
            return limit_prefactor(lam, n, rr, B * F.pow_t(N - 1), F) *
                   omega_function(detail::scaled(z, cplx<T>(1) / s), lam, Partition(),
                                  P.with_ab(P.a * r1n * s * s, B).with_r(rr));
        },
        h);
}

} // namespace ellw
