#pragma once

#include <algorithm>
#include <charconv>
#include <complex>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace ellw {

/// A weakly decreasing sequence of non-negative integers.
///
/// Trailing zeros may be stored (they matter for the padded row count some
/// formulas are written against), but comparison and hashing always look at
/// the normalized form.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) { validate(); }

    /// 1-based row access; rows past the end are zero.
    int operator()(std::size_t i) const
    {
        return (i >= 1 && i <= parts_.size()) ? parts_[i - 1] : 0;
    }

    const std::vector<int>& parts() const noexcept { return parts_; }

    /// Stored row count, trailing zeros included.
    std::size_t size() const noexcept { return parts_.size(); }

    /// Number of non-zero rows.
    std::size_t length() const noexcept
    {
        std::size_t l = parts_.size();
        while (l > 0 && parts_[l - 1] == 0)
            --l;
        return l;
    }

    bool empty() const noexcept { return length() == 0; }

    int weight() const noexcept
    {
        int w = 0;
        for (int v : parts_)
            w += v;
        return w;
    }

    /// n(lambda) = sum (i-1) lambda_i.
    long n_lambda() const noexcept
    {
        long s = 0;
        for (std::size_t i = 0; i < parts_.size(); ++i)
            s += static_cast<long>(i) * parts_[i];
        return s;
    }

    /// n(lambda') = sum lambda_i (lambda_i - 1) / 2.
    long n_conj() const noexcept
    {
        long s = 0;
        for (int v : parts_)
            s += static_cast<long>(v) * (v - 1) / 2;
        return s;
    }

    Partition conjugate() const
    {
        std::vector<int> c;
        if (!empty())
            for (int j = 0; j < parts_[0]; ++j)
                c.push_back(static_cast<int>(std::count_if(parts_.begin(), parts_.end(),
                                                           [j](int v) { return v > j; })));
        return Partition(std::move(c));
    }

    Partition normalized() const
    {
        return Partition(std::vector<int>(parts_.begin(), parts_.begin() + length()));
    }

    /// Copy padded with zeros (or trimmed of zeros) to exactly n rows.
    Partition padded(std::size_t n) const
    {
        if (length() > n)
            throw dimension_error("partition " + str() + " has more than " + std::to_string(n) + " parts");
        std::vector<int> v(n, 0);
        std::copy(parts_.begin(), parts_.begin() + length(), v.begin());
        return Partition(std::move(v));
    }

    /// Comma separated normalized parts; the empty partition prints as "".
    std::string str() const
    {
        std::string s;
        for (std::size_t i = 0; i < length(); ++i) {
            if (i)
                s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    /// Parses "3,1,0". Blank input is the empty partition.
    static Partition parse(std::string_view text)
    {
        std::vector<int> v;
        auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
                s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
                s.remove_suffix(1);
            return s;
        };
        text = trim(text);
        if (text.empty())
            return Partition();
        while (true) {
            auto comma = text.find(',');
            auto tok = trim(text.substr(0, comma));
            int value = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
                throw std::invalid_argument("malformed partition \"" + std::string(text) + "\"");
            v.push_back(value);
            if (comma == std::string_view::npos)
                break;
            text.remove_prefix(comma + 1);
        }
        return Partition(std::move(v));
    }

    friend bool operator==(const Partition& x, const Partition& y)
    {
        std::size_t l = x.length();
        return l == y.length() && std::equal(x.parts_.begin(), x.parts_.begin() + l, y.parts_.begin());
    }

    friend std::strong_ordering operator<=>(const Partition& x, const Partition& y)
    {
        return std::lexicographical_compare_three_way(x.parts_.begin(), x.parts_.begin() + x.length(),
                                                      y.parts_.begin(), y.parts_.begin() + y.length());
    }

private:
    void validate() const
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0)
                throw std::invalid_argument("partition has a negative part");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    std::vector<int> parts_;
};

inline bool contains(const Partition& mu, const Partition& lambda)
{
    std::size_t n = std::max(mu.size(), lambda.size());
    for (std::size_t i = 1; i <= n; ++i)
        if (mu(i) > lambda(i))
            return false;
    return true;
}

/// lambda_1 >= mu_1 >= lambda_2 >= mu_2 >= ...
inline bool is_horizontal_strip(const Partition& lambda, const Partition& mu)
{
    std::size_t n = std::max(lambda.size(), mu.size());
    for (std::size_t i = 1; i <= n; ++i)
        if (!(lambda(i) >= mu(i) && mu(i) >= lambda(i + 1)))
            return false;
    return true;
}

/// All mu contained in lambda, in reverse-lexicographic order starting from lambda itself.
inline std::vector<Partition> subpartitions(const Partition& lambda)
{
    const auto lam = lambda.normalized().parts();
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int prev) {
        if (i == lam.size()) {
            out.emplace_back(cur);
            return;
        }
        for (int v = std::min(prev, lam[i]); v >= 0; --v) {
            cur.push_back(v);
            rec(i + 1, v);
            cur.pop_back();
        }
    };
    rec(0, lam.empty() ? 0 : lam[0]);
    for (auto& p : out)
        p = p.normalized();
    return out;
}

/// All nu such that lambda/nu is a horizontal strip.
inline std::vector<Partition> horizontal_strips(const Partition& lambda)
{
    const auto lam = lambda.normalized().parts();
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == lam.size()) {
            out.push_back(Partition(cur).normalized());
            return;
        }
        int lo = i + 1 < lam.size() ? lam[i + 1] : 0;
        for (int v = lam[i]; v >= lo; --v) {
            cur.push_back(v);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

/// Every partition of weight at most max_weight with at most max_length parts,
/// largest weight first within each first part.
inline std::vector<Partition> partitions_up_to(int max_weight, std::size_t max_length)
{
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int bound) {
        out.emplace_back(cur);
        if (cur.size() == max_length)
            return;
        for (int v = std::min(remaining, bound); v >= 1; --v) {
            cur.push_back(v);
            rec(remaining - v, v);
            cur.pop_back();
        }
    };
    rec(max_weight, max_weight);
    return out;
}

/// The n-part partition with every part equal to k.
inline Partition rectangle(int k, std::size_t n) { return Partition(std::vector<int>(n, k)); }

/// N^n minus the reversal of lambda: (N - lambda_n, ..., N - lambda_1).
inline Partition complement(const Partition& lambda, int N, std::size_t n)
{
    if (lambda(1) > N || lambda.length() > n)
        throw dimension_error("partition " + lambda.str() + " is not contained in the " + std::to_string(N) +
                              "^" + std::to_string(n) + " box");
    std::vector<int> v(n);
    for (std::size_t i = 1; i <= n; ++i)
        v[i - 1] = N - lambda(n + 1 - i);
    return Partition(std::move(v));
}

template <class T>
std::complex<T> ipow(std::complex<T> z, long k)
{
    if (k < 0)
        return std::complex<T>(1) / ipow(z, -k);
    std::complex<T> r(1);
    while (k) {
        if (k & 1)
            r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

/// The point q^lambda t^delta(n) = (q^{lambda_1} t^{n-1}, ..., q^{lambda_n}).
template <class T>
std::vector<std::complex<T>> spectral_point(const Partition& lambda, std::size_t n, std::complex<T> q,
                                            std::complex<T> t)
{
    if (lambda.length() > n)
        throw dimension_error("spectral point needs n >= length of " + lambda.str());
    std::vector<std::complex<T>> x(n);
    for (std::size_t i = 1; i <= n; ++i)
        x[i - 1] = ipow(q, lambda(i)) * ipow(t, static_cast<long>(n - i));
    return x;
}

} // namespace ellw

template <>
struct std::hash<ellw::Partition> {
    std::size_t operator()(const ellw::Partition& p) const noexcept
    {
        std::size_t h = 0;
        for (std::size_t i = 0; i < p.length(); ++i)
            h = h * 1000003u + static_cast<std::size_t>(p.parts()[i]) + 1;
        return h;
    }
};
