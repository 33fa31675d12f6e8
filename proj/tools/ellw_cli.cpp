// Command-line front end: run identity checks, list the registry, evaluate functions.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ellw/ellw.hpp"
#include "ellw/report.hpp"

namespace {

using ellw::Complex;
using ellw::Partition;
using ellw::Real;

constexpr int exit_usage = 2;
constexpr int exit_eval_error = 1;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Real parse_real(const std::string& text, const std::string& whole)
{
    std::size_t used = 0;
    Real v = 0;
    try {
        v = std::stold(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (text.empty() || used != text.size())
        throw usage_error("malformed complex number \"" + whole + "\"");
    return v;
}

// Accepts "1.5", "-2i", "0.3+0.2i", "0.3-1e-3i" and "re:im".
Complex parse_complex(const std::string& raw)
{
    std::string z;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            z += c;
    if (auto colon = z.find(':'); colon != std::string::npos)
        return {parse_real(z.substr(0, colon), raw), parse_real(z.substr(colon + 1), raw)};
    if (z.empty() || (z.back() != 'i' && z.back() != 'j'))
        return {parse_real(z, raw), 0};
    z.pop_back();
    // Split at the last sign that is not leading and not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < z.size(); ++i)
        if ((z[i] == '+' || z[i] == '-') && z[i - 1] != 'e' && z[i - 1] != 'E')
            split = i;
    auto imag = [&](const std::string& s) {
        return s.empty() || s == "+" ? Real(1) : s == "-" ? Real(-1) : parse_real(s, raw);
    };
    if (split == std::string::npos)
        return {0, imag(z)};
    return {parse_real(z.substr(0, split), raw), imag(z.substr(split))};
}

std::vector<Complex> parse_csv(const std::string& text)
{
    std::vector<Complex> out;
    if (text.empty())
        return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_complex(item));
    return out;
}

Partition parse_partition(const std::string& text)
{
    try {
        return Partition::parse(text);
    } catch (const std::exception& e) {
        throw usage_error(std::string("malformed partition \"") + text + "\": " + e.what());
    }
}

std::string format(const Complex& z)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.15Lg%+.15Lgi", z.real(), z.imag());
    return buf;
}

struct EvalArgs {
    std::string kind, lambda, mu, x;
    std::string q, p, t, a, b, r = "1", s = "1";
    std::optional<int> n;
};

Complex run_eval(const EvalArgs& e)
{
    ellw::Params<Real> P;
    P.q = parse_complex(e.q);
    P.p = parse_complex(e.p);
    P.t = parse_complex(e.t);
    P.a = parse_complex(e.a);
    P.b = parse_complex(e.b);
    P.r = parse_complex(e.r);
    P.s = parse_complex(e.s);
    const Partition lam = parse_partition(e.lambda);
    const Partition mu = parse_partition(e.mu);
    const auto x = parse_csv(e.x);
    if (e.n && *e.n < 1)
        throw usage_error("--n must be >= 1");

    auto need_x = [&] {
        if (x.empty())
            throw usage_error(e.kind + " needs --x");
        return ellw::Point<Real>(x.begin(), x.end());
    };
    auto rows = [&] { return static_cast<std::size_t>(e.n.value_or(std::max<int>(1, lam.length()))); };

    if (e.kind != "Phi" && e.kind != "H")
        P.validate();
    if (e.kind == "W")
        return ellw::w_function(need_x(), lam, mu, P);
    if (e.kind == "W*")
        return ellw::w_star(need_x(), lam, P);
    if (e.kind == "omega")
        return ellw::omega_function(need_x(), lam, mu, P);
    if (e.kind == "H")
        return ellw::h_factor(lam, mu, P, rows());
    if (e.kind == "N")
        return ellw::normalization(lam, rows(), P);
    if (e.kind == "Phi") {
        // --x carries the series parameters a_1 .. a_{k-1}; lambda is the upper
        // partition and mu the lower one.
        P.validate();
        return ellw::phi_series(std::vector<Complex>(x.begin(), x.end()), lam, mu, rows(), P);
    }
    throw usage_error("unknown eval kind \"" + e.kind + "\" (expected W, W*, omega, H, N or Phi)");
}

void print_summary(const ellw::IdentityReport& rep)
{
    int pass = 0, fail = 0, inc = 0;
    for (const auto& t : rep.trials)
        (t.status == "pass" ? pass : t.status == "fail" ? fail : inc)++;
    std::cout << rep.identity << ": " << (rep.passed ? "PASSED" : "NOT PASSED") << "  trials " << pass << " pass / "
              << fail << " fail / " << inc << " inconclusive  max residual " << rep.max_residual << "  tol "
              << rep.config.tol << "  (" << static_cast<long>(rep.wall_time_ms) << " ms)\n";
    for (std::size_t i = 0; i < rep.trials.size(); ++i) {
        const auto& t = rep.trials[i];
        if (t.status == "pass")
            continue;
        std::cout << "  trial " << i << " " << t.status << " residual " << t.residual;
        for (const auto& [k, v] : t.partitions)
            std::cout << " " << k << "=(" << v << ")";
        if (!t.note.empty())
            std::cout << "  " << t.note;
        std::cout << "\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Evaluate elliptic W and omega functions and certify their identities numerically"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List the identity registry");

    auto* check = app.add_subcommand("check", "Run randomized trials of one identity");
    std::string id;
    std::optional<int> n, max_weight, trials;
    std::optional<double> tol;
    std::uint64_t seed = 1;
    int max_resamples = 50;
    std::string json_path;
    check->add_option("identity", id, "Identity id (see list)")->required();
    check->add_option("--n", n, "Number of variables / rows");
    check->add_option("--max-weight", max_weight, "Cap on partition weights");
    check->add_option("--trials", trials, "Number of trials");
    check->add_option("--seed", seed, "Base seed");
    check->add_option("--tol", tol, "Residual tolerance");
    check->add_option("--max-resamples", max_resamples, "Redraw budget per trial");
    check->add_option("--json", json_path, "Write the report here");

    auto* eval = app.add_subcommand("eval", "Evaluate one function value");
    EvalArgs ea;
    eval->add_option("kind", ea.kind, "W, W*, omega, H, N or Phi")->required();
    eval->add_option("--lambda", ea.lambda, "Partition, e.g. \"2,1\" (\"\" for the empty one)")->required();
    eval->add_option("--mu", ea.mu, "Lower partition");
    eval->add_option("--x", ea.x, "Comma-separated complex variables (series parameters for Phi)");
    for (auto [name, field] : {std::pair{"--q", &ea.q}, {"--p", &ea.p}, {"--t", &ea.t}, {"--a", &ea.a}, {"--b", &ea.b}})
        eval->add_option(name, *field, "Complex parameter")->required();
    eval->add_option("--r", ea.r, "Complex parameter (default 1)");
    eval->add_option("--s", ea.s, "Complex parameter (default 1)");
    eval->add_option("--n", ea.n, "Number of rows for H, N and Phi");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (*list) {
        for (const auto& s : ellw::registry())
            std::printf("%-22s n=%d max-weight=%d tol=%-7.0e %s\n", s.id.c_str(), s.n, s.max_weight, s.tol,
                        s.description.c_str());
        return 0;
    }

    if (*check) {
        ellw::TrialConfig cfg;
        try {
            cfg = ellw::default_config(id);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << " (run `list` for the registry)\n";
            return exit_usage;
        }
        if (n)
            cfg.n = *n;
        if (max_weight)
            cfg.max_weight = *max_weight;
        if (trials)
            cfg.trials = *trials;
        if (tol)
            cfg.tol = *tol;
        cfg.seed = seed;
        cfg.max_resamples = max_resamples;
        ellw::IdentityReport rep;
        try {
            rep = ellw::run_identity(cfg);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_usage;
        }
        print_summary(rep);
        if (!json_path.empty()) {
            std::ofstream out(json_path);
            if (!out) {
                std::cerr << "error: cannot write " << json_path << "\n";
                return exit_usage;
            }
            out << ellw::to_json(rep).dump(2) << "\n";
        }
        return ellw::exit_code(rep);
    }

    try {
        std::cout << format(run_eval(ea)) << "\n";
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ellw::pole_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_eval_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_eval_error;
    }
    return 0;
}
