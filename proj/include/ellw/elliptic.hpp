#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "errors.hpp"
#include "partition.hpp"

namespace ellw {

template <class T>
using cplx = std::complex<T>;

namespace detail {
inline long double& pole_threshold_ref()
{
    thread_local long double value = 1e-13L;
    return value;
}

template <class T>
std::string fmt(const cplx<T>& z)
{
    std::ostringstream os;
    os.precision(6);
    os << '(' << static_cast<double>(z.real()) << ',' << static_cast<double>(z.imag()) << ')';
    return os.str();
}
} // namespace detail

namespace detail {
inline long double& worst_cancellation_ref()
{
    thread_local long double value = 0;
    return value;
}
} // namespace detail

/// Records the cancellation ratio sum|terms| / |sum| of a computed sum (per thread).
template <class T>
void note_cancellation(T mass, const cplx<T>& value)
{
    if (mass == T(0))
        return;
    const long double v = std::abs(value);
    const long double c = v == 0 ? std::numeric_limits<long double>::infinity() : static_cast<long double>(mass) / v;
    detail::worst_cancellation_ref() = std::max(detail::worst_cancellation_ref(), c);
}

/// Largest ratio recorded since the last reset.
inline long double worst_cancellation() { return detail::worst_cancellation_ref(); }
inline void reset_cancellation() { detail::worst_cancellation_ref() = 0; }

/// Evaluations inside this scope leave the cancellation record untouched; used
/// for quantities whose exact value is zero.
class UnmonitoredScope {
public:
    UnmonitoredScope() : saved_(detail::worst_cancellation_ref()) {}
    ~UnmonitoredScope() { detail::worst_cancellation_ref() = saved_; }
    UnmonitoredScope(const UnmonitoredScope&) = delete;
    UnmonitoredScope& operator=(const UnmonitoredScope&) = delete;

private:
    long double saved_;
};

/// Magnitude below which a denominator theta factor counts as a pole (per thread).
inline long double pole_threshold() { return detail::pole_threshold_ref(); }

/// Sets the pole threshold for the current thread until the guard goes out of scope.
class PoleThresholdGuard {
public:
    explicit PoleThresholdGuard(long double value) : saved_(detail::pole_threshold_ref())
    {
        detail::pole_threshold_ref() = value;
    }
    ~PoleThresholdGuard() { detail::pole_threshold_ref() = saved_; }
    PoleThresholdGuard(const PoleThresholdGuard&) = delete;
    PoleThresholdGuard& operator=(const PoleThresholdGuard&) = delete;

private:
    long double saved_;
};

/// E(x;p) = (x;p)_inf (p/x;p)_inf, truncated once the dropped factors are below
/// a tenth of the working epsilon. theta(0, 0) = 1 is allowed so that the
/// trigonometric b = 0 specialisations can be evaluated.
template <class T>
cplx<T> theta(cplx<T> x, cplx<T> p)
{
    using std::abs;
    if (!(abs(p) < T(1)))
        throw domain_error("theta: |p| must be < 1, got " + detail::fmt(p));
    if (p == cplx<T>(0))
        return cplx<T>(1) - x;
    if (x == cplx<T>(0))
        throw domain_error("theta: x = 0 with p != 0");
    const T eps = std::numeric_limits<T>::epsilon() / 10;
    const cplx<T> xi = cplx<T>(1) / x;
    const T big = std::max(abs(x), abs(xi));
    cplx<T> r = cplx<T>(1) - x;
    cplx<T> pk = p;
    while (abs(pk) * big > eps) {
        r *= (cplx<T>(1) - x * pk) * (cplx<T>(1) - pk * xi);
        pk *= p;
    }
    return r;
}

/// Shared nome data (q, p, t) with the elliptic factorial family built on it.
template <class T>
struct Nome {
    using C = cplx<T>;
    C q, p, t;

    C E(C x) const { return theta(x, p); }

    /// 1/E(x), raising pole_error when |E(x)| is under the current threshold.
    C inv_E(C x) const
    {
        C v = theta(x, p);
        if (std::abs(v) < static_cast<T>(pole_threshold()))
            throw pole_error("pole: theta factor E(x) vanishes at x = " + detail::fmt(x));
        return C(1) / v;
    }

    /// (a;q,p)_m for any integer m.
    C qp(C a, long m) const
    {
        if (m < 0)
            return inv_qp(a * ipow(q, m), -m);
        C r(1);
        for (long k = 0; k < m; ++k, a *= q)
            r *= E(a);
        return r;
    }

    /// 1/(a;q,p)_m with every denominator factor checked.
    C inv_qp(C a, long m) const
    {
        if (m < 0)
            return qp(a * ipow(q, m), -m);
        C r(1);
        for (long k = 0; k < m; ++k, a *= q) {
            C v = E(a);
            if (std::abs(v) < static_cast<T>(pole_threshold()))
                throw pole_error("pole: factor E(a q^" + std::to_string(k) + ") of (a;q,p)_" + std::to_string(m) +
                                 " vanishes, a q^k = " + detail::fmt(a));
            r /= v;
        }
        return r;
    }

    /// (a;q,p,t)_lambda = prod_i (a t^{1-i};q,p)_{lambda_i}.
    C pf(C a, const Partition& lam) const
    {
        C r(1);
        const C ti = C(1) / t;
        for (std::size_t i = 1; i <= lam.length(); ++i, a *= ti)
            r *= qp(a, lam(i));
        return r;
    }

    C inv_pf(C a, const Partition& lam) const
    {
        C r(1);
        const C ti = C(1) / t;
        for (std::size_t i = 1; i <= lam.length(); ++i, a *= ti)
            r *= inv_qp(a, lam(i));
        return r;
    }

    C pf(std::initializer_list<C> as, const Partition& lam) const
    {
        C r(1);
        for (const C& a : as)
            r *= pf(a, lam);
        return r;
    }

    C inv_pf(std::initializer_list<C> as, const Partition& lam) const
    {
        C r(1);
        for (const C& a : as)
            r *= inv_pf(a, lam);
        return r;
    }

    /// (a)_lambda / (a)_mu for mu inside lambda, as a product over the skew cells.
    /// This stays finite (and exactly zero where it should be) at points where
    /// both factorials vanish.
    C pf_skew(C a, const Partition& lam, const Partition& mu) const
    {
        C r(1);
        const std::size_t n = std::max(lam.size(), mu.size());
        for (std::size_t i = 1; i <= n; ++i) {
            C base = a * ipow(t, 1 - static_cast<long>(i));
            for (int k = mu(i); k < lam(i); ++k)
                r *= E(base * ipow(q, k));
        }
        return r;
    }

    C pow_q(long k) const { return ipow(q, k); }
    C pow_t(long k) const { return ipow(t, k); }
};

/// The complex parameter tuple (q, p, t, a, b) with the optional r and s used by
/// the Jackson coefficients and the series identities.
template <class T = long double>
struct Params {
    using C = cplx<T>;
    C q, p, t, a, b;
    C r{1}, s{1};

    Nome<T> nome() const { return {q, p, t}; }

    Params with_ab(C a2, C b2) const
    {
        Params c = *this;
        c.a = a2;
        c.b = b2;
        return c;
    }

    Params with_r(C r2) const
    {
        Params c = *this;
        c.r = r2;
        return c;
    }

    /// Throws domain_error unless |p| < 1 and q, t, a, b are non-zero.
    void validate() const
    {
        if (!(std::abs(p) < T(1)))
            throw domain_error("parameter p must satisfy |p| < 1");
        const std::pair<const char*, C> fields[] = {{"q", q}, {"t", t}, {"a", a}, {"b", b}, {"r", r}, {"s", s}};
        for (const auto& [name, v] : fields)
            if (v == C(0))
                throw domain_error(std::string("parameter ") + name + " must be non-zero");
    }
};

template <class T>
cplx<T> qp_factorial(cplx<T> a, cplx<T> q, cplx<T> p, long m)
{
    return Nome<T>{q, p, cplx<T>(1)}.qp(a, m);
}

template <class T>
cplx<T> partition_factorial(cplx<T> a, const Partition& lam, const Params<T>& P)
{
    return P.nome().pf(a, lam);
}

template <class T>
cplx<T> multi_factorial(std::initializer_list<cplx<T>> as, const Partition& lam, const Params<T>& P)
{
    return P.nome().pf(as, lam);
}

/// Value at eps = 0 of a function analytic on a punctured disc around 0 with a
/// removable singularity there: the mean of f over m equally spaced points on
/// |eps| = h. The error is of order (h / R)^m with R the distance to the nearest
/// genuine singularity, so the radius is shrunk by 4 until two successive means
/// agree to within agree (or h drops below 1e-6 of its starting value).
template <class T, class Fn>
cplx<T> circle_limit(Fn f, T h, int m = 16, T agree = T(1e-13))
{
    auto mean = [&](T radius) {
        cplx<T> sum(0);
        for (int k = 0; k < m; ++k)
            sum += f(std::polar<T>(radius, T(2) * std::acos(T(-1)) * T(k) / T(m)));
        return sum / T(m);
    };
    cplx<T> prev = mean(h);
    for (T r = h / 4; r > h * T(1e-6); r /= 4) {
        const cplx<T> cur = mean(r);
        if (std::abs(cur - prev) <= agree * (std::abs(cur) + std::abs(prev)))
            return cur;
        prev = cur;
    }
    return prev;
}

/// |x - y| / (|x| + |y| + 1e-30).
template <class T>
T relative_residual(cplx<T> x, cplx<T> y)
{
    return std::abs(x - y) / (std::abs(x) + std::abs(y) + T(1e-30));
}

} // namespace ellw
