#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "json.hpp"
#include "verify.hpp"

namespace ellw {

namespace detail {

// JSON has no infinity; an unbounded residual is written as null.
inline nlohmann::json number_or_null(double v)
{
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

inline double number_from(const nlohmann::json& j)
{
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

} // namespace detail

inline nlohmann::json complex_to_json(const Complex& z)
{
    return nlohmann::json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())});
}

inline Complex complex_from_json(const nlohmann::json& j)
{
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline nlohmann::json to_json(const TrialConfig& c)
{
    return {{"identity", c.identity}, {"n", c.n},       {"max_weight", c.max_weight},       {"trials", c.trials},
            {"seed", c.seed},         {"tol", c.tol},   {"max_resamples", c.max_resamples}};
}

inline nlohmann::json to_json(const TrialRecord& r)
{
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params)
        params[k] = complex_to_json(v);
    nlohmann::json parts = nlohmann::json::object();
    for (const auto& [k, v] : r.partitions)
        parts[k] = v;
    nlohmann::json j = {{"params", params},
                        {"partitions", parts},
                        {"residual", detail::number_or_null(r.residual)},
                        {"status", r.status},
                        {"resamples", r.resamples}};
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

/// Report as {identity, config, trials, max_residual, passed, wall_time_ms}.
inline nlohmann::json to_json(const IdentityReport& rep)
{
    nlohmann::json trials = nlohmann::json::array();
    for (const auto& t : rep.trials)
        trials.push_back(to_json(t));
    return {{"identity", rep.identity},
            {"config", to_json(rep.config)},
            {"trials", trials},
            {"max_residual", detail::number_or_null(rep.max_residual)},
            {"passed", rep.passed},
            {"wall_time_ms", rep.wall_time_ms}};
}

inline TrialConfig config_from_json(const nlohmann::json& j)
{
    TrialConfig c;
    c.identity = j.at("identity").get<std::string>();
    c.n = j.at("n").get<int>();
    c.max_weight = j.at("max_weight").get<int>();
    c.trials = j.at("trials").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.tol = j.at("tol").get<double>();
    c.max_resamples = j.at("max_resamples").get<int>();
    return c;
}

inline TrialRecord record_from_json(const nlohmann::json& j)
{
    TrialRecord r;
    for (const auto& [k, v] : j.at("params").items())
        r.params.emplace_back(k, complex_from_json(v));
    for (const auto& [k, v] : j.at("partitions").items())
        r.partitions.emplace_back(k, v.get<std::string>());
    r.residual = detail::number_from(j.at("residual"));
    r.status = j.at("status").get<std::string>();
    r.resamples = j.value("resamples", 0);
    r.note = j.value("note", std::string());
    return r;
}

inline IdentityReport report_from_json(const nlohmann::json& j)
{
    IdentityReport rep;
    rep.identity = j.at("identity").get<std::string>();
    rep.config = config_from_json(j.at("config"));
    for (const auto& t : j.at("trials")) {
        rep.trials.push_back(record_from_json(t));
        if (rep.trials.back().status != "inconclusive")
            ++rep.conclusive;
    }
    rep.max_residual = detail::number_from(j.at("max_residual"));
    rep.passed = j.at("passed").get<bool>();
    rep.wall_time_ms = j.at("wall_time_ms").get<double>();
    return rep;
}

} // namespace ellw
