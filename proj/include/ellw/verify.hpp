#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elliptic.hpp"
#include "omega.hpp"
#include "partition.hpp"
#include "series.hpp"
#include "wfun.hpp"

namespace ellw {

using Real = long double;
using Complex = std::complex<Real>;

/// Macdonald's psi_{lambda/mu}(q,t) from arm and leg lengths: the product of
/// b_mu(s)/b_lambda(s) over cells s in rows that meet lambda/mu but in columns that do not.
inline Complex macdonald_psi(const Partition& lam, const Partition& mu, Complex q, Complex t)
{
    const Partition lc = lam.conjugate(), mc = mu.conjugate();
    auto bfun = [&](const Partition& l, const Partition& lconj, int i, int j) {
        const int arm = l(i) - j, leg = lconj(j) - i;
        return (Complex(1) - ipow(q, arm) * ipow(t, leg + 1)) / (Complex(1) - ipow(q, arm + 1) * ipow(t, leg));
    };
    std::vector<bool> col_hit(lam(1) + 1, false);
    for (std::size_t i = 1; i <= lam.length(); ++i)
        for (int j = mu(i) + 1; j <= lam(i); ++j)
            col_hit[j] = true;
    Complex r(1);
    for (std::size_t i = 1; i <= lam.length(); ++i) {
        if (lam(i) == mu(i))
            continue;
        for (int j = 1; j <= lam(i); ++j)
            if (!col_hit[j])
                r *= bfun(mu, mc, static_cast<int>(i), j) / bfun(lam, lc, static_cast<int>(i), j);
    }
    return r;
}

/// Settings of one randomized verification run.
struct TrialConfig {
    std::string identity;
    int n = 2;
    int max_weight = 4;
    int trials = 20;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    int max_resamples = 50;
};

struct TrialRecord {
    std::vector<std::pair<std::string, Complex>> params;
    std::vector<std::pair<std::string, std::string>> partitions; ///< labels of the worst case
    double residual = 0;
    std::string status; ///< "pass", "fail" or "inconclusive"
    int resamples = 0;
    std::string note;
};

struct IdentityReport {
    std::string identity;
    TrialConfig config;
    std::vector<TrialRecord> trials;
    double max_residual = 0;
    bool passed = false;
    int conclusive = 0;
    double wall_time_ms = 0;
};

/// Deterministic per-trial parameter stream. The generator is seeded from
/// (seed, trial index) only, so trials do not depend on each other.
class Sampler {
public:
    Sampler(std::uint64_t seed, std::uint64_t trial)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), 0x5eedu};
        rng_.seed(seq);
    }

    /// Uniform in [0, 1) from the top 53 bits, independent of the library's distributions.
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Modulus uniform in [lo, hi], phase uniform.
    Complex annulus(double lo, double hi)
    {
        const double m = uniform(lo, hi);
        const double ph = uniform(0, 2 * 3.14159265358979323846);
        return std::polar<Real>(m, ph);
    }

    /// q, p, t with modulus in [0.05, 0.6]; a, b, r, s with modulus in [0.2, 2].
    Params<Real> params()
    {
        Params<Real> P;
        P.q = annulus(0.05, 0.6);
        P.p = annulus(0.05, 0.6);
        P.t = annulus(0.05, 0.6);
        P.a = annulus(0.2, 2.0);
        P.b = annulus(0.2, 2.0);
        P.r = annulus(0.2, 2.0);
        P.s = annulus(0.2, 2.0);
        return P;
    }

    /// A generic evaluation variable.
    Complex variable() { return annulus(0.5, 1.5); }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Working state of a single trial: the sampled parameters, extra draws and the
/// worst residual seen so far.
class Trial {
public:
    Trial(Sampler& s, const TrialConfig& cfg) : sampler(s), config(cfg) {}

    Sampler& sampler;
    const TrialConfig& config;
    Params<Real> P;

    void begin()
    {
        P = sampler.params();
        record_.params = {{"q", P.q}, {"p", P.p}, {"t", P.t}, {"a", P.a}, {"b", P.b}, {"r", P.r}, {"s", P.s}};
        record_.partitions.clear();
        record_.residual = 0;
        seen_ = false;
    }

    /// Records an extra parameter under a name.
    Complex keep(const std::string& name, Complex v)
    {
        for (auto& [k, old] : record_.params)
            if (k == name) {
                old = v;
                return v;
            }
        record_.params.emplace_back(name, v);
        return v;
    }

    Complex extra(const std::string& name, double lo = 0.2, double hi = 2.0)
    {
        return keep(name, sampler.annulus(lo, hi));
    }

    Point<Real> variables(std::size_t n)
    {
        Point<Real> x(n);
        for (auto& v : x)
            v = sampler.variable();
        return x;
    }

    void consider(Real residual, std::vector<std::pair<std::string, std::string>> labels)
    {
        const double r = std::isfinite(static_cast<double>(residual)) ? static_cast<double>(residual)
                                                                      : std::numeric_limits<double>::infinity();
        if (!seen_ || r > record_.residual || std::isnan(static_cast<double>(residual))) {
            record_.residual = std::isnan(static_cast<double>(residual)) ? std::numeric_limits<double>::infinity() : r;
            record_.partitions = std::move(labels);
            seen_ = true;
        }
    }

    TrialRecord& record() { return record_; }

private:
    TrialRecord record_;
    bool seen_ = false;
};

struct IdentitySpec {
    std::string id;
    std::string description;
    int n;
    int max_weight;
    double tol;
    std::function<void(Trial&)> body;
    /// Resample draws whose sums cancel by more than max_cancellation. Off for
    /// identities whose target value is zero.
    bool monitor_cancellation = true;
};

/// Largest tolerated sum|terms| / |sum| in a monitored trial at tolerance tol:
/// long double round-off (about 1e-19) times the ratio must stay two orders
/// under tol.
inline long double max_cancellation(double tol) { return std::min(1e9L, static_cast<long double>(tol) * 1e17L); }

namespace detail {

inline std::vector<Partition> parts(int max_weight, std::size_t max_len)
{
    return partitions_up_to(max_weight, max_len);
}

/// Partition of weight w spread over n rows as evenly as possible, largest rows first.
inline Partition balanced_cap(int w, int n)
{
    std::vector<int> v(n, w / n);
    for (int i = 0; i < w % n; ++i)
        ++v[i];
    return Partition(v).normalized();
}

inline Point<Real> swapped(Point<Real> x, std::size_t i, std::size_t j)
{
    std::swap(x[i], x[j]);
    return x;
}

/// Adjacent transpositions and the inversions x_i -> 1/(a x_i) of a point.
inline std::vector<Point<Real>> hyperoctahedral_images(const Point<Real>& x, Complex a)
{
    std::vector<Point<Real>> out;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        out.push_back(swapped(x, i, i + 1));
    for (std::size_t i = 0; i < x.size(); ++i) {
        Point<Real> y(x);
        y[i] = Complex(1) / (a * y[i]);
        out.push_back(y);
    }
    return out;
}

inline std::string pstr(const Partition& p) { return p.str(); }

inline Partition cell_union(const Partition& a, const Partition& b)
{
    std::vector<int> v(std::max(a.size(), b.size()));
    for (std::size_t i = 1; i <= v.size(); ++i)
        v[i - 1] = std::max(a(i), b(i));
    return Partition(v);
}

// -- W functions --------------------------------------------------------------

inline void w_vanishing(Trial& tr)
{
    const auto& P = tr.P;
    const std::size_t n = tr.config.n;
    const auto all = parts(tr.config.max_weight, n);
    for (const auto& lam : all)
        for (const auto& pi : all) {
            if (contains(lam, pi))
                continue;
            const Complex v = w_function(spectral_point(pi, n, P.q, P.t), lam, P);
            const Real scale =
                std::max(std::abs(normalization(lam, n, P)),
                         std::abs(w_function(spectral_point(cell_union(lam, pi), n, P.q, P.t), lam, P)));
            tr.consider(std::abs(v) / scale, {{"lambda", pstr(lam)}, {"pi", pstr(pi)}});
        }
}

inline void w_normalization(Trial& tr)
{
    const std::size_t n = tr.config.n;
    for (const auto& lam : parts(tr.config.max_weight, n))
        tr.consider(relative_residual(w_function(spectral_point(lam, n, tr.P.q, tr.P.t), lam, tr.P),
                                      normalization(lam, n, tr.P)),
                    {{"lambda", pstr(lam)}});
}

inline void w_symmetry(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto x = tr.variables(n);
    WContext<Real> ctx(tr.P);
    const auto images = hyperoctahedral_images(x, tr.P.a);
    for (const auto& lam : parts(tr.config.max_weight, n)) {
        const Complex base = ctx.eval(x, lam, Partition());
        for (const auto& y : images)
            tr.consider(relative_residual(base, w_function(y, lam, tr.P)), {{"lambda", pstr(lam)}});
    }
}

inline void w_ellipticity(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto x = tr.variables(n);
    for (const auto& lam : parts(tr.config.max_weight, n)) {
        const Complex base = w_function(x, lam, tr.P);
        for (std::size_t i = 0; i < n; ++i) {
            Point<Real> y(x);
            y[i] *= tr.P.p;
            tr.consider(relative_residual(base, w_function(y, lam, tr.P)),
                        {{"lambda", pstr(lam)}, {"shifted", std::to_string(i + 1)}});
        }
    }
}

inline void w_reduction(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto x = tr.variables(n);
    for (const auto& lam : parts(tr.config.max_weight, n)) {
        const Complex lhs = w_function(x, lam, tr.P);
        for (int k = 0; k <= lam(n); ++k)
            tr.consider(relative_residual(lhs, w_reduction_rhs(x, lam, k, tr.P)),
                        {{"lambda", pstr(lam)}, {"k", std::to_string(k)}});
    }
}

inline void w_reversal(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto x = tr.variables(n);
    const int top = std::max(1, tr.config.max_weight / static_cast<int>(n));
    for (int N = 1; N <= top; ++N)
        for (const auto& lam : subpartitions(rectangle(N, n)))
            tr.consider(relative_residual(w_star(x, complement(lam, N, n), tr.P), w_reversal_rhs(x, lam, N, tr.P)),
                        {{"lambda", pstr(lam)}, {"N", std::to_string(N)}});
}

inline void w_inversion(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto x = tr.variables(n);
    for (const auto& lam : parts(tr.config.max_weight, n))
        tr.consider(relative_residual(w_inversion_lhs(x, lam, tr.P), w_inversion_rhs(x, lam, tr.P)),
                    {{"lambda", pstr(lam)}});
}

inline void w_stability(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto x = tr.variables(n);
    for (std::size_t k = 1; k < n; ++k) {
        const Point<Real> xhat(x.begin(), x.begin() + (n - k));
        for (const auto& lam : parts(tr.config.max_weight, n - k))
            tr.consider(relative_residual(w_stability_lhs(xhat, lam, k, tr.P), w_stability_rhs(xhat, lam, k, tr.P)),
                        {{"lambda", pstr(lam)}, {"k", std::to_string(k)}});
    }
}

inline void w_poles(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto rest = tr.variables(n - 1);
    Params<Real> P0 = tr.P;
    P0.p = 0;
    for (const auto& lam : parts(tr.config.max_weight, n)) {
        if (lam.empty() || lam(1) > 3)
            continue;
        for (const auto& [Pk, literal] : {std::pair{tr.P, false}, std::pair{P0, false}, std::pair{P0, true}}) {
            const auto fit = pole_fit(lam, rest, Pk, tr.sampler.engine(), literal);
            if (!(fit.condition < 1e10))
                throw pole_error("pole fit: ill-conditioned least-squares system");
            tr.consider(fit.residual, {{"lambda", pstr(lam)}, {"basis", literal ? "p=0 literal" : Pk.p == Complex(0)
                                                                                       ? "p=0 theta"
                                                                                       : "theta"}});
        }
    }
}

inline void w_interpolation_vanishing(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const Partition box = rectangle(std::max(1, tr.config.max_weight / static_cast<int>(n)), n);
    for (const auto& lam : parts(tr.config.max_weight, n)) {
        auto s = vanishing_scan(lam, tr.P, box, n, tr.sampler.engine());
        tr.consider(std::max(s.spectral, s.tilde), {{"lambda", pstr(lam)}});
    }
}

// -- series ---------------------------------------------------------------------

inline void w_jackson(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto x = tr.variables(n);
    const Complex s = tr.P.s;
    for (const auto& lam : parts(tr.config.max_weight, n))
        tr.consider(relative_residual(w_jackson_lhs(x, lam, s, tr.P), w_jackson_rhs(x, lam, s, tr.P)),
                    {{"lambda", pstr(lam)}});
}

inline void jackson_1d(Trial& tr)
{
    const Complex z = tr.keep("z", tr.sampler.variable());
    for (int m = 0; m <= tr.config.max_weight; ++m)
        tr.consider(jackson_1d_check(z, tr.P.s, m, tr.P), {{"m", std::to_string(m)}});
}

inline void duality(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const Complex ap = tr.extra("a_prime");
    const auto all = parts(tr.config.max_weight, n);
    for (const auto& lam : all)
        for (const auto& nu : all)
            tr.consider(duality_check(lam, nu, n, ap, tr.P), {{"lambda", pstr(lam)}, {"nu", pstr(nu)}});
}

inline void cocycle(Trial& tr)
{
    const Complex u = tr.extra("u"), v = tr.extra("v");
    const auto& P = tr.P;
    const Complex uv = u * v;
    const Partition cap = balanced_cap(tr.config.max_weight, tr.config.n);
    auto om = [&](Complex x, const Partition& l, const Partition& m, Complex rr, Complex aa, Complex bb) {
        return omega_skew_one(x, l, m, 0, P.with_ab(aa, bb).with_r(rr));
    };
    for (const auto& nu : subpartitions(cap))
        for (const auto& mu : subpartitions(nu)) {
            const Complex lhs = om(Complex(1) / uv, nu, mu, uv, P.a * uv * uv, P.b * uv);
            Complex rhs(0);
            Real mass = 0;
            for (const auto& lam : subpartitions(nu))
                if (contains(mu, lam)) {
                    const Complex term = om(Complex(1) / v, nu, lam, v, P.a * uv * uv, P.b * uv) *
                                         om(Complex(1) / u, lam, mu, u, P.a * u * u, P.b * u);
                    rhs += term;
                    mass += std::abs(term);
                }
            note_cancellation(mass, rhs);
            tr.consider(relative_residual(lhs, rhs), {{"nu", pstr(nu)}, {"mu", pstr(mu)}});
        }
}

inline void phi10_9(Trial& tr)
{
    const std::size_t n = tr.config.n;
    Phi109Args<Real> A{tr.extra("b", 0.5, 1.6), tr.extra("c", 0.5, 1.6), tr.extra("d", 0.5, 1.6),
                       tr.extra("e", 0.5, 1.6), tr.extra("f", 0.5, 1.6), tr.extra("g", 0.5, 1.6)};
    const Partition cap = balanced_cap(tr.config.max_weight, tr.config.n);
    for (const auto& nu : subpartitions(cap))
        for (const auto& tau : subpartitions(nu))
            tr.consider(phi10_9_transform_check(A, nu, tau, n, tr.P), {{"nu", pstr(nu)}, {"tau", pstr(tau)}});
}

inline void bailey_transform(Trial& tr)
{
    const Partition cap = balanced_cap(tr.config.max_weight, tr.config.n);
    auto& rng = tr.sampler.engine();
    const auto alpha = TriangularArray<Real>::random(cap, rng);
    const auto delta = TriangularArray<Real>::random(cap, rng);
    const auto m = TriangularArray<Real>::random(cap, rng);
    for (const auto& nu : subpartitions(cap))
        for (const auto& tau : subpartitions(nu))
            tr.consider(bailey_transform_check(alpha, delta, m, tau, nu), {{"nu", pstr(nu)}, {"tau", pstr(tau)}});
    const auto left = tri_multiply(tri_multiply(alpha, delta), m);
    const auto right = tri_multiply(alpha, tri_multiply(delta, m));
    for (const auto& l : left.index())
        for (const auto& mu : subpartitions(l))
            tr.consider(relative_residual(left(l, mu), right(l, mu)),
                        {{"associativity", pstr(l)}, {"mu", pstr(mu)}});
}

// -- omega ------------------------------------------------------------------------

inline void omega_symmetry(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto x = tr.variables(n);
    OmegaContext<Real> ctx(tr.P);
    const auto images = hyperoctahedral_images(x, tr.P.a);
    for (const auto& lam : parts(tr.config.max_weight, n))
        for (const auto& mu : subpartitions(lam)) {
            const Complex base = ctx.eval(x, lam, mu);
            for (const auto& y : images)
                tr.consider(relative_residual(base, omega_function(y, lam, mu, tr.P)),
                            {{"lambda", pstr(lam)}, {"mu", pstr(mu)}});
        }
}

inline void omega_shifted(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const Complex x = tr.keep("x", tr.sampler.variable());
    for (std::size_t m = 1; m <= n; ++m) {
        const auto z = r_delta_point(x, m, tr.P.r);
        OmegaContext<Real> ctx(tr.P);
        for (const auto& lam : parts(tr.config.max_weight, n))
            for (const auto& mu : subpartitions(lam))
                tr.consider(relative_residual(ctx.eval(z, lam, mu), omega_shifted_closed(x, m, lam, mu, 0, tr.P)),
                            {{"lambda", pstr(lam)}, {"mu", pstr(mu)}, {"m", std::to_string(m)}});
    }
}

inline void omega_vanishing(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto& P = tr.P;
    const auto z = tr.variables(n);
    const auto pis = parts(tr.config.max_weight, n);
    for (const auto& lam : parts(tr.config.max_weight, n)) {
        if (lam.empty())
            continue;
        Real scale = std::abs(omega_function(z, lam, Partition(), P));
        std::vector<std::pair<Partition, Complex>> zeros;
        for (const auto& pi : pis) {
            Point<Real> pt(n);
            for (std::size_t i = 1; i <= n; ++i)
                pt[i - 1] = ipow(P.q, pi(i)) * ipow(P.r, static_cast<long>(n - i));
            const Complex v = omega_function(pt, lam, Partition(), P);
            if (contains(lam, rectangle(pi(1), n)))
                scale = std::max(scale, std::abs(v));
            else
                zeros.emplace_back(pi, v);
        }
        for (const auto& [pi, v] : zeros)
            tr.consider(std::abs(v) / scale, {{"lambda", pstr(lam)}, {"pi", pstr(pi)}});
    }
}

inline void omega_rdelta(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto& P = tr.P;
    const Complex x = tr.keep("x", tr.sampler.variable());
    const Complex dir = tr.sampler.annulus(1, 1);
    for (const auto& lam : parts(tr.config.max_weight, n)) {
        for (std::size_t m = 1; m <= n; ++m) {
            const auto pt = r_delta_point(Complex(1), m, P.r);
            if (lam.empty()) {
                tr.consider(relative_residual(omega_function(pt, lam, Partition(), P), Complex(1)),
                            {{"lambda", pstr(lam)}, {"m", std::to_string(m)}});
                continue;
            }
            // A computed zero is only as small as the input rounding allows, so
            // the scale is |d omega| |x| estimated at a nearby point.
            UnmonitoredScope quiet;
            const Complex v = omega_function(pt, lam, Partition(), P);
            const Real eps = 1e-6L;
            auto near = pt;
            near[0] *= Complex(1) + eps * dir;
            const Real slope = std::abs(omega_function(near, lam, Partition(), P)) / eps;
            tr.consider(std::abs(v) / std::max<Real>(1, slope), {{"lambda", pstr(lam)}, {"m", std::to_string(m)}});
        }
        const Complex two = omega_function(Point<Real>{Complex(1), x}, lam, Partition(), P);
        const Complex one = omega_skew_one(x / P.r, lam, Partition(), 0, P.with_ab(P.a * P.r * P.r, P.b * P.r));
        tr.consider(relative_residual(two, one), {{"lambda", pstr(lam)}, {"point", "(1,x)"}});
    }
}

inline void omega_jackson(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const Complex s = tr.P.s;
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto z = tr.variables(k);
        for (const auto& lam : parts(tr.config.max_weight, n))
            tr.consider(omega_jackson_check(z, lam, s, n, tr.P), {{"lambda", pstr(lam)}, {"k", std::to_string(k)}});
    }
}

inline void omega_jackson_limit(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto z = tr.variables(n);
    const Complex s = tr.P.s;
    const auto F = tr.P.nome();
    const Params<Real> Pw = tr.P.with_ab(tr.P.a * F.pow_t(static_cast<long>(n) + 1), tr.P.b * tr.P.t);
    for (const auto& lam : parts(tr.config.max_weight, n)) {
        const Complex lim = omega_jackson_degeneration(z, lam, s, tr.P);
        tr.consider(relative_residual(lim, w_jackson_lhs(z, lam, s, Pw)), {{"lambda", pstr(lam)}});
    }
}

inline void omega_inversion(Trial& tr)
{
    const auto& P = tr.P;
    const Complex r = P.r;
    const Partition cap = balanced_cap(tr.config.max_weight, tr.config.n);
    for (const auto& nu : subpartitions(cap))
        for (const auto& tau : subpartitions(nu)) {
            Complex sum(0);
            Real mass = 0;
            for (const auto& lam : subpartitions(nu)) {
                if (!contains(tau, lam))
                    continue;
                const Complex term = omega_skew_one(r, nu, lam, 0, P.with_r(Complex(1) / r)) *
                                     omega_skew_one(Complex(1) / r, lam, tau, 0, P.with_ab(P.a * r * r, P.b * r));
                sum += term;
                mass += std::abs(term);
            }
            const Complex expect = nu == tau ? Complex(1) : Complex(0);
            tr.consider(std::abs(sum - expect) / std::max<Real>(1, mass), {{"nu", pstr(nu)}, {"tau", pstr(tau)}});
        }
}

inline void omega_elliptic_shifts(Trial& tr)
{
    const auto& P = tr.P;
    const Complex x = tr.keep("x", tr.sampler.variable());
    const Complex q = P.q, p = P.p, t = P.t, a = P.a, b = P.b, r = P.r;
    for (const auto& lam : parts(tr.config.max_weight, tr.config.n))
        for (const auto& mu : subpartitions(lam)) {
            const Complex base = omega_skew_one(x, lam, mu, 0, P);
            const long dl = lam.weight() - mu.weight(), dn = lam.n_lambda() - mu.n_lambda(),
                       dc = lam.n_conj() - mu.n_conj(), wm = mu.weight();
            const Complex fb = ipow(q * q * b * b / a, dl) * ipow(t, -2 * dn) * ipow(q, 2 * dc);
            const Complex fa = ipow(q * b, -dl) * ipow(p, dl) * ipow(r, -wm) * ipow(t, 2 * dn) * ipow(q, -2 * dc);
            const Complex fr =
                ipow(a / (r * r), -wm) * ipow(p, 2 * wm) * ipow(t, 2 * mu.n_lambda()) * ipow(q, -2 * mu.n_conj());
            Params<Real> Pb = P, Pa = P, Pr = P;
            Pb.b = p * b;
            Pa.a = p * a;
            Pr.r = p * r;
            const std::vector<std::pair<std::string, Complex>> sides = {
                {"b->pb", omega_skew_one(x, lam, mu, 0, Pb) / fb},
                {"a->pa", omega_skew_one(x, lam, mu, 0, Pa) / fa},
                {"r->pr", omega_skew_one(x, lam, mu, 0, Pr) / fr},
                {"x->px", omega_skew_one(p * x, lam, mu, 0, P)}};
            for (const auto& [name, v] : sides)
                tr.consider(relative_residual(base, v), {{"lambda", pstr(lam)}, {"mu", pstr(mu)}, {"shift", name}});
        }
}

inline void omega_diagonal(Trial& tr)
{
    const Complex x = tr.keep("x", tr.sampler.variable());
    for (const auto& lam : parts(tr.config.max_weight, tr.config.n))
        tr.consider(relative_residual(omega_skew_one(x, lam, lam, 0, tr.P), omega_diag_closed(x, lam, 0, tr.P)),
                    {{"lambda", pstr(lam)}});
}

inline void w_omega_limit(Trial& tr)
{
    const std::size_t n = tr.config.n;
    const auto& P = tr.P;
    const Complex x = tr.keep("x", tr.sampler.variable());
    for (const auto& lam : parts(tr.config.max_weight, n))
        for (const auto& mu : horizontal_strips(lam)) {
            if (mu.length() >= n)
                continue;
            tr.consider(relative_residual(omega_to_w_limit(x, lam, mu, n, P), w_skew_one(x, lam, mu, P, n)),
                        {{"lambda", pstr(lam)}, {"mu", pstr(mu)}});
        }
    // Full multivariable form: W_lambda(z) = lim P-prefactor(b t^{n-1}) omega_lambda(z; r).
    const auto z = tr.variables(n);
    const auto F = P.nome();
    for (const auto& lam : parts(tr.config.max_weight, n)) {
        PoleThresholdGuard guard(0);
        const Complex lim = circle_limit<Real>(
            [&](Complex eps) {
                const Complex rr = P.t * (Real(1) + eps);
                return limit_prefactor(lam, n, rr, P.b * F.pow_t(static_cast<long>(n) - 1), F) *
                       omega_function(z, lam, Partition(), P.with_r(rr));
            },
            Real(1e-2));
        tr.consider(relative_residual(lim, w_function(z, lam, P)), {{"lambda", pstr(lam)}, {"form", "multivariable"}});
    }
}

// -- H limits -------------------------------------------------------------------

inline void h_macdonald_limit(Trial& tr)
{
    Params<Real> P = tr.P;
    P.p = 0;
    P.b = 0;
    tr.keep("p", P.p);
    tr.keep("b", P.b);
    for (const auto& lam : parts(tr.config.max_weight, tr.config.max_weight))
        for (const auto& mu : horizontal_strips(lam))
            tr.consider(relative_residual(h_factor(lam, mu, P, lam.length() + 1), macdonald_psi(lam, mu, P.q, P.t)),
                        {{"lambda", pstr(lam)}, {"mu", pstr(mu)}});
}

inline void h_tq_limit(Trial& tr)
{
    Params<Real> P = tr.P;
    P.t = P.q;
    tr.keep("t", P.t);
    for (const auto& lam : parts(tr.config.max_weight, tr.config.max_weight))
        for (const auto& mu : horizontal_strips(lam))
            for (std::size_t extra = 0; extra <= 1; ++extra)
                tr.consider(std::abs(h_factor(lam, mu, P, lam.length() + extra) - Complex(1)),
                            {{"lambda", pstr(lam)}, {"mu", pstr(mu)}});
}

} // namespace detail

/// Every identity the harness knows, with its default size and tolerance.
inline const std::vector<IdentitySpec>& registry()
{
    using namespace detail;
    static const std::vector<IdentitySpec> specs = {
        {"w-vanishing", "W_lambda(q^pi t^delta) = 0 when lambda is not inside pi", 2, 4, 1e-8, w_vanishing, false},
        {"w-interpolation", "W vanishes at q^nu t^delta (lambda not in nu) and W~ at b^-1 q^-nu^r t^delta", 2, 4,
         1e-8, w_interpolation_vanishing, false},
        {"w-normalization", "W_lambda(q^lambda t^delta) equals the closed-form N(lambda, n)", 2, 4, 1e-9,
         w_normalization},
        {"w-symmetry", "W_lambda is invariant under permutations and x_i -> 1/(a x_i)", 3, 4, 1e-9, w_symmetry},
        {"w-ellipticity", "W_lambda is unchanged by x_i -> p x_i", 3, 4, 1e-9, w_ellipticity},
        {"w-reduction", "removing k full columns: W_lambda = prefactor * W_{lambda-k^n}(x q^-k; a q^2k, b q^2k)", 2, 4,
         1e-8, w_reduction},
        {"w-reversal", "W*_{N^n - lambda^r}(x) = W*_{N^n}(x) (qb/a)^{2|lambda|} W*_lambda(b q^N x; ...)", 2, 4, 1e-8,
         w_reversal},
        {"w-inversion", "W_lambda(1/x; 1/q, p, 1/t, 1/a, 1/b) = monomial * W_lambda(x)", 2, 3, 1e-8, w_inversion},
        {"w-stability", "W_lambda(x_hat, t^delta(k)) = W_lambda(x_hat t^-k; a t^2k, b t^k)", 3, 4, 1e-9,
         w_stability},
        {"w-poles", "single-variable pole structure: W_lambda * D(x) lies in the BC_1 theta space", 2, 3, 1e-7,
         w_poles},
        {"w-jackson", "W_lambda(x/s; a t^-2n s^2, b t^-n s) = sum_mu (...) W_mu(x; a t^-2n, b t^-n)", 2, 4, 1e-8,
         w_jackson},
        {"duality", "W symmetry identity exchanging (lambda, a) with (nu, a')", 2, 4, 1e-8, duality},
        {"cocycle", "omega((uv)^-1; uv) = sum_lambda omega(v^-1; v) omega(u^-1; u)", 2, 5, 1e-8, cocycle},
        {"phi10-9", "BC_n 10phi9 transformation with gamma = q b^2/(c d e)", 2, 4, 1e-8, phi10_9},
        {"bailey-transform", "gamma alpha = delta beta for beta = m alpha, gamma = delta m; associativity", 2, 5,
         1e-12, bailey_transform},
        {"jackson-1d", "one-dimensional elliptic Jackson summation", 1, 4, 1e-8, jackson_1d},
        {"omega-symmetry", "omega_{lambda/mu} is invariant under permutations and x_i -> 1/(a x_i)", 3, 4, 1e-8,
         omega_symmetry},
        {"omega-shifted", "closed form of omega_{lambda/mu}(x r^delta(m))", 3, 4, 1e-8, omega_shifted},
        {"omega-vanishing", "omega_lambda(q^pi r^delta) = 0 when lambda is not inside pi_1^n", 2, 3, 1e-8,
         omega_vanishing, false},
        {"omega-rdelta", "omega_lambda(r^delta(m)) = [lambda = 0] and omega_lambda(1, x) = omega_lambda(x/r; a r^2, b r)",
         3, 4, 1e-8, omega_rdelta},
        {"omega-jackson", "multivariable omega-Jackson summation for k = 1, 2, 3 variables", 2, 4, 1e-8,
         omega_jackson},
        {"omega-jackson-limit", "as r -> t (k = n) the omega-Jackson left side tends to the W-Jackson left side", 2, 3,
         1e-6, omega_jackson_limit},
        {"omega-inversion", "sum_lambda omega_{nu/lambda}(r; 1/r) omega_{lambda/tau}(1/r; r) = [nu = tau]", 2, 5, 1e-8,
         omega_inversion},
        {"omega-elliptic-shifts", "omega under b -> pb, a -> pa, r -> pr, x -> px", 3, 3, 1e-8,
         omega_elliptic_shifts},
        {"omega-diagonal", "closed form of omega_{lambda/lambda}", 3, 4, 1e-8, omega_diagonal},
        {"w-omega-limit", "prefactor * omega_{lambda/mu}(x; r) -> W_{lambda/mu}(x) as r -> t", 3, 3, 1e-6,
         w_omega_limit},
        {"h-macdonald-limit", "H_{lambda/mu} at p = b = 0 equals Macdonald's psi_{lambda/mu}", 2, 5, 1e-10,
         h_macdonald_limit},
        {"h-tq-limit", "H_{lambda/mu} = 1 when t = q", 2, 5, 1e-10, h_tq_limit},
    };
    return specs;
}

inline const IdentitySpec* find_identity(const std::string& id)
{
    for (const auto& s : registry())
        if (s.id == id)
            return &s;
    return nullptr;
}

/// Config populated with an identity's defaults.
inline TrialConfig default_config(const std::string& id)
{
    const IdentitySpec* spec = find_identity(id);
    if (!spec)
        throw std::invalid_argument("unknown identity \"" + id + "\"");
    TrialConfig c;
    c.identity = id;
    c.n = spec->n;
    c.max_weight = spec->max_weight;
    c.tol = spec->tol;
    return c;
}

/// Runs cfg.trials independent trials. Pole hits (a denominator theta factor
/// below 1e-6) trigger a fresh parameter draw; a trial that exhausts its
/// resample budget is inconclusive. The run passes when no conclusive trial
/// exceeds tol and at least 80% of trials are conclusive.
inline IdentityReport run_identity(const TrialConfig& cfg)
{
    const IdentitySpec* spec = find_identity(cfg.identity);
    if (!spec)
        throw std::invalid_argument("unknown identity \"" + cfg.identity + "\"");
    if (cfg.trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (!(cfg.tol > 0 && cfg.tol < 1))
        throw std::invalid_argument("tol must lie in (0, 1)");
    if (cfg.max_weight < 0 || cfg.max_weight > 8)
        throw std::invalid_argument("max-weight must lie in [0, 8]");
    if (cfg.n < 1)
        throw std::invalid_argument("n must be >= 1");

    const auto start = std::chrono::steady_clock::now();
    IdentityReport rep;
    rep.identity = cfg.identity;
    rep.config = cfg;
    bool any_fail = false;
    for (int i = 0; i < cfg.trials; ++i) {
        Sampler sampler(cfg.seed, static_cast<std::uint64_t>(i));
        Trial tr(sampler, cfg);
        int resamples = 0;
        bool done = false;
        std::string last_pole;
        while (!done && resamples <= cfg.max_resamples) {
            tr.begin();
            try {
                PoleThresholdGuard guard(1e-6L);
                reset_cancellation();
                spec->body(tr);
                if (spec->monitor_cancellation && worst_cancellation() > max_cancellation(cfg.tol)) {
                    last_pole = "ill-conditioned draw: cancellation ratio " +
                                std::to_string(static_cast<double>(worst_cancellation()));
                    ++resamples;
                    continue;
                }
                done = true;
            } catch (const pole_error& e) {
                last_pole = e.what();
                ++resamples;
            }
        }
        TrialRecord rec = tr.record();
        rec.resamples = resamples;
        if (!done) {
            rec.status = "inconclusive";
            rec.residual = 0;
            rec.note = "resample budget exhausted; last: " + last_pole;
        } else {
            rec.status = rec.residual <= cfg.tol ? "pass" : "fail";
            any_fail = any_fail || rec.status == "fail";
            rep.max_residual = std::max(rep.max_residual, rec.residual);
            ++rep.conclusive;
        }
        rep.trials.push_back(std::move(rec));
    }
    rep.passed = !any_fail && rep.conclusive * 5 >= cfg.trials * 4;
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/// Process exit code for a report: 0 pass, 1 fail, 3 too few conclusive trials.
inline int exit_code(const IdentityReport& rep)
{
    if (rep.passed)
        return 0;
    for (const auto& t : rep.trials)
        if (t.status == "fail")
            return 1;
    return 3;
}

} // namespace ellw
