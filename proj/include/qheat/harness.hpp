#pragma once

// Config-driven batch runs: traces, A_q, zeta functions, expansions and
// expansion-versus-direct verification, written as CSV.

#include "qheat/asymptotics.hpp"
#include "qheat/errors.hpp"
#include "qheat/mellin.hpp"
#include "qheat/numerics.hpp"
#include "qheat/spectrum.hpp"
#include "qheat/traces.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace qheat::harness {

inline constexpr const char* version = "1.0.0";

enum class Task { trace, aq, zeta, expand, verify };
enum class StatKind { bose, fermi, relativistic, classical };

inline std::string to_string(Task t) {
    switch (t) {
        case Task::trace: return "trace";
        case Task::aq: return "aq";
        case Task::zeta: return "zeta";
        case Task::expand: return "expand";
        case Task::verify: return "verify";
    }
    return "?";
}

inline Task parse_task(const std::string& s) {
    if (s == "trace") return Task::trace;
    if (s == "aq") return Task::aq;
    if (s == "zeta") return Task::zeta;
    if (s == "expand") return Task::expand;
    if (s == "verify") return Task::verify;
    throw InputError("unknown task '" + s + "' (expected trace, aq, zeta, expand or verify)");
}

struct RunConfig {
    Task task = Task::trace;
    std::string spectrum_kind;
    std::vector<double> spectrum_params;
    double mass_sq = 0.0;
    std::string spectrum_file;
    StatKind statistics = StatKind::relativistic;
    double mu = 0.0;
    double tol = 1e-12;
    std::string trace_path = "direct";
    std::vector<double> grid;
    bool derivative = false;
    std::string zeta_function = "zeta_h";
    std::string zeta_method = "direct";
    int K = 0;
    double slope_tol = 0.3;
    std::optional<double> max_rel_residual;
    std::string output;
    std::vector<std::pair<std::string, std::string>> echo;  // section.key=value, sorted
};

struct RunOutput {
    std::string metadata;
    std::string body;
    std::string report;
    int status = 0;  // 0 success, 2 verification failure

    std::string csv() const { return metadata + body; }
};

namespace detail {

inline std::string shortest(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline double parse_double(const std::string& raw, const std::string& what) {
    const std::string s = trim(raw);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || !std::isfinite(v))
        throw InputError(what + ": '" + raw + "' is not a finite number");
    return v;
}

inline std::vector<double> parse_list(const std::string& raw, const std::string& what) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(raw);
    while (std::getline(in, item, ',')) {
        std::istringstream words(item);
        std::string w;
        while (words >> w) out.push_back(parse_double(w, what));
    }
    return out;
}

inline std::vector<double> spaced(const std::vector<double>& spec, bool logarithmic, const std::string& what) {
    if (spec.size() != 3) throw InputError(what + ": expected 'lo, hi, count'");
    const double lo = spec[0], hi = spec[1];
    const double cd = spec[2];
    if (cd != std::floor(cd) || cd < 1) throw InputError(what + ": count must be a positive integer");
    const int n = static_cast<int>(cd);
    if (logarithmic && !(lo > 0.0 && hi > 0.0)) throw InputError(what + ": bounds must be positive");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        g[static_cast<std::size_t>(i)] =
            logarithmic ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
    }
    g.front() = lo;
    if (n > 1) g.back() = hi;
    return g;
}

inline const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"spectrum", {"kind", "params", "mass_sq", "file"}},
        {"run", {"task", "statistics", "mu", "tol", "path", "output"}},
        {"grid", {"values", "logspace", "linspace"}},
        {"aq", {"derivative"}},
        {"zeta", {"function", "method"}},
        {"expand", {"K"}},
        {"verify", {"K", "slope_tol", "max_rel_residual"}},
    };
    return keys;
}

inline StatKind parse_stat(const std::string& s) {
    if (s == "bose") return StatKind::bose;
    if (s == "fermi") return StatKind::fermi;
    if (s == "relativistic") return StatKind::relativistic;
    if (s == "classical") return StatKind::classical;
    throw InputError("run.statistics: '" + s + "' is not one of bose, fermi, relativistic, classical");
}

inline std::string stat_name(StatKind s) {
    switch (s) {
        case StatKind::bose: return "bose";
        case StatKind::fermi: return "fermi";
        case StatKind::relativistic: return "relativistic";
        case StatKind::classical: return "classical";
    }
    return "?";
}

inline int parse_int(const std::string& raw, const std::string& what) {
    const double v = parse_double(raw, what);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw InputError(what + ": expected an integer");
    return static_cast<int>(v);
}

inline bool parse_bool(const std::string& raw, const std::string& what) {
    const std::string s = trim(raw);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw InputError(what + ": expected true or false");
}

}  // namespace detail

/// Parses the key=value/[section] config for the given task; relative spectrum files resolve against base_dir.
inline RunConfig parse_config(std::istream& in, Task task, const std::filesystem::path& base_dir = {}) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw InputError(std::string("malformed config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    RunConfig c;
    c.task = task;
    std::map<std::string, std::string> flat;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw InputError("config key '" + section + "' must live inside a [section]");
        const auto known = detail::known_keys().find(section);
        if (known == detail::known_keys().end()) throw InputError("unknown config section [" + section + "]");
        for (const auto& [key, node] : body) {
            if (!known->second.count(key)) throw InputError("unknown config key " + section + "." + key);
            flat[section + "." + key] = detail::trim(node.data());
        }
    }
    c.echo.assign(flat.begin(), flat.end());
    auto get = [&](const std::string& k) -> std::optional<std::string> {
        auto it = flat.find(k);
        if (it == flat.end()) return std::nullopt;
        return it->second;
    };

    if (auto t = get("run.task"); t && parse_task(*t) != task)
        throw InputError("config run.task=" + *t + " does not match the requested task " + to_string(task));

    c.spectrum_kind = get("spectrum.kind").value_or("");
    if (c.spectrum_kind.empty()) throw InputError("spectrum.kind is required");
    if (auto v = get("spectrum.mass_sq")) c.mass_sq = detail::parse_double(*v, "spectrum.mass_sq");
    if (c.spectrum_kind == "file") {
        auto f = get("spectrum.file");
        if (!f) throw InputError("spectrum.file is required for kind=file");
        std::filesystem::path p(*f);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        c.spectrum_file = p.string();
    } else {
        auto p = get("spectrum.params");
        if (!p) throw InputError("spectrum.params is required for kind=" + c.spectrum_kind);
        c.spectrum_params = detail::parse_list(*p, "spectrum.params");
    }

    if (auto v = get("run.statistics")) c.statistics = detail::parse_stat(*v);
    if (auto v = get("run.mu")) c.mu = detail::parse_double(*v, "run.mu");
    if (auto v = get("run.tol")) c.tol = detail::parse_double(*v, "run.tol");
    if (!(c.tol > 0.0) || c.tol > 1e-2) throw InputError("run.tol must lie in (0, 1e-2]");
    if (auto v = get("run.path")) c.trace_path = *v;
    if (c.trace_path != "direct" && c.trace_path != "reduction")
        throw InputError("run.path must be direct or reduction");
    if (auto v = get("run.output")) c.output = *v;

    const int grids = get("grid.values").has_value() + get("grid.logspace").has_value() + get("grid.linspace").has_value();
    if (grids != 1) throw InputError("exactly one of grid.values, grid.logspace, grid.linspace is required");
    if (auto v = get("grid.values")) c.grid = detail::parse_list(*v, "grid.values");
    if (auto v = get("grid.logspace")) c.grid = detail::spaced(detail::parse_list(*v, "grid.logspace"), true, "grid.logspace");
    if (auto v = get("grid.linspace")) c.grid = detail::spaced(detail::parse_list(*v, "grid.linspace"), false, "grid.linspace");
    if (c.grid.empty()) throw InputError("grid is empty");

    if (auto v = get("aq.derivative")) c.derivative = detail::parse_bool(*v, "aq.derivative");
    if (auto v = get("zeta.function")) c.zeta_function = *v;
    if (auto v = get("zeta.method")) c.zeta_method = *v;
    if (task == Task::expand) {
        if (auto v = get("expand.K")) c.K = detail::parse_int(*v, "expand.K");
    }
    if (task == Task::verify) {
        if (auto v = get("verify.K")) c.K = detail::parse_int(*v, "verify.K");
        if (auto v = get("verify.slope_tol")) c.slope_tol = detail::parse_double(*v, "verify.slope_tol");
        if (auto v = get("verify.max_rel_residual"))
            c.max_rel_residual = detail::parse_double(*v, "verify.max_rel_residual");
    }
    if (c.K < 0) throw InputError("K must be non-negative");

    // task-specific requirements
    const bool positive_grid = task != Task::aq && task != Task::zeta;
    if (positive_grid)
        for (double g : c.grid)
            if (!(g > 0.0)) throw InputError("grid values must be positive for task " + to_string(task));
    if (task == Task::verify && c.grid.size() < 5) throw InputError("verify needs at least 5 grid points");
    if ((task == Task::expand || task == Task::verify) && c.statistics == StatKind::classical)
        throw InputError("expansions exist for relativistic, bose and fermi statistics only");
    if (c.trace_path == "reduction" && !(c.statistics == StatKind::bose || c.statistics == StatKind::fermi))
        throw InputError("run.path=reduction applies to bose and fermi traces only");
    if (c.trace_path == "reduction" && c.mu > 0.0) throw InputError("run.path=reduction requires mu <= 0");
    if ((task == Task::expand || task == Task::verify) && c.mu > 0.0)
        throw InputError("expansions require mu <= 0");
    if (task == Task::zeta) {
        static const std::set<std::string> fns{"zeta_h", "z_r", "z_b", "z_f"};
        if (!fns.count(c.zeta_function)) throw InputError("zeta.function must be zeta_h, z_r, z_b or z_f");
    }
    return c;
}

inline RunConfig load_config(const std::string& path, Task task) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config " + path);
    return parse_config(in, task, std::filesystem::path(path).parent_path());
}

inline Spectrum build_spectrum(const RunConfig& c) {
    const std::string& k = c.spectrum_kind;
    if (k == "file") return Spectrum::from_file(c.spectrum_file, c.mass_sq);
    if (k == "circle") return make_spectrum(SpectrumKind::circle, c.spectrum_params, c.mass_sq);
    if (k == "torus" || k == "flat_torus") return make_spectrum(SpectrumKind::flat_torus, c.spectrum_params, c.mass_sq);
    if (k == "sphere2") return make_spectrum(SpectrumKind::sphere2, c.spectrum_params, c.mass_sq);
    throw InputError("spectrum.kind '" + k + "' is not one of circle, torus, sphere2, file");
}

/// QHEAT_MAX_THREADS if set to a positive integer, else the hardware concurrency.
inline int max_threads_from_env() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("QHEAT_MAX_THREADS");
    if (!env || !*env) return static_cast<int>(hw);
    int v = 0;
    const std::string s(env);
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || v < 1)
        throw InputError("QHEAT_MAX_THREADS must be a positive integer");
    return v;
}

namespace detail {

using Row = std::vector<double>;

/// Evaluates f(i) for every grid index on up to `threads` workers; results land in grid order.
template <class F>
std::vector<Row> parallel_rows(std::size_t n, int threads, F&& f) {
    std::vector<Row> rows(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                rows[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto count = static_cast<std::size_t>(std::max(1, threads));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < std::min(count, n); ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

inline std::string format_rows(const std::vector<std::string>& header, const std::vector<Row>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!std::isfinite(r[i])) throw Error("non-finite value in output column " + header[i]);
            os << (i ? "," : "") << shortest(r[i]);
        }
        os << '\n';
    }
    return os.str();
}

inline Statistics quantum_stat(StatKind s) { return s == StatKind::bose ? Statistics::bose : Statistics::fermi; }

inline asymptotics::TraceKind trace_kind(StatKind s) {
    switch (s) {
        case StatKind::bose: return asymptotics::TraceKind::bose;
        case StatKind::fermi: return asymptotics::TraceKind::fermi;
        default: return asymptotics::TraceKind::relativistic;
    }
}

inline double direct_trace(const Spectrum& spec, const RunConfig& c, double x) {
    switch (c.statistics) {
        case StatKind::classical: return theta_classical(spec, x, std::max(c.tol, 1e-15));
        case StatKind::relativistic: return theta_relativistic(spec, x, std::max(c.tol, 1e-15));
        default: {
            const auto path = c.trace_path == "reduction" ? TracePath::reduction_integral : TracePath::direct_sum;
            return theta_quantum(spec, x, c.mu, quantum_stat(c.statistics), std::max(c.tol, 1e-15), path);
        }
    }
}

inline void check_combination(const Spectrum& spec, const RunConfig& c) {
    if (c.statistics == StatKind::bose && !(c.mu < spec.omega_min()))
        throw InputError("unsupported combination: bose statistics require mu < omega_1 = " +
                         shortest(spec.omega_min()) + ", got mu = " + shortest(c.mu));
    if (c.statistics == StatKind::bose && c.mu == 0.0 && !(spec.lambda_min() > 0.0))
        throw InputError("unsupported combination: bose mu=0 requires lambda_1 > 0");
}

}  // namespace detail

/// Least-squares slope of log y against log x with its 95% confidence half-width.
struct SlopeFit {
    double slope;
    double halfwidth95;
};

inline SlopeFit fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 3) throw InputError("slope fit needs at least 3 points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(std::max(std::abs(y[i]), 1e-300)));
    }
    const auto f = numerics::fit_line(lx, ly);
    const boost::math::students_t dist(static_cast<double>(x.size()) - 2.0);
    const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
    return {f.slope, tq * f.slope_stderr};
}

/// Executes one task. Throws InputError for invalid input and qheat::Error for numerical failures.
inline RunOutput run(const RunConfig& c, int max_threads) {
    const Spectrum spec = build_spectrum(c);
    if (c.statistics == StatKind::bose || c.statistics == StatKind::fermi) detail::check_combination(spec, c);
    RunOutput out;
    std::ostringstream meta;
    meta << "# qheat " << version << '\n'
         << "# task=" << to_string(c.task) << '\n'
         << "# spectrum=" << spec.describe() << '\n';
    for (const auto& [k, v] : c.echo) meta << "# config." << k << '=' << v << '\n';
    meta << "# tol=" << detail::shortest(c.tol) << '\n';

    std::vector<std::string> header;
    std::vector<detail::Row> rows;
    const std::size_t n = c.grid.size();

    switch (c.task) {
        case Task::trace: {
            header = {c.statistics == StatKind::classical ? "t" : "beta", "value"};
            rows = detail::parallel_rows(n, max_threads, [&](std::size_t i) {
                return detail::Row{c.grid[i], detail::direct_trace(spec, c, c.grid[i])};
            });
            break;
        }
        case Task::aq: {
            const MellinEngine engine(spec, std::max(c.tol, 1e-13));
            meta << "# split_point=" << detail::shortest(engine.split_point()) << '\n';
            header = {"q", c.derivative ? "derivative" : "value", "err", "order"};
            rows = detail::parallel_rows(n, max_threads, [&](std::size_t i) {
                const auto r = c.derivative ? engine.a_q_prime(c.grid[i]) : engine.a_q(c.grid[i]);
                return detail::Row{c.grid[i], r.value, r.err_estimate, static_cast<double>(r.regularization_order)};
            });
            break;
        }
        case Task::zeta: {
            std::optional<MellinEngine> engine;
            const std::string& fn = c.zeta_function;
            const std::string& m = c.zeta_method;
            auto bad_method = [&] { return InputError("zeta.method '" + m + "' is not available for " + fn); };
            if (fn == "zeta_h" && m != "direct" && m != "via_a") throw bad_method();
            if (fn == "z_r" && m != "direct" && m != "mu_series" && m != "closed_mu0") throw bad_method();
            if ((fn == "z_b" || fn == "z_f") && m != "direct" && m != "relation" && m != "quadrature") throw bad_method();
            if (m == "via_a" || m == "mu_series" || m == "closed_mu0") engine.emplace(spec, std::max(c.tol, 1e-13));
            if (m == "closed_mu0" && c.mu != 0.0) throw InputError("zeta.method=closed_mu0 requires mu = 0");
            header = {"s", "value", "err"};
            rows = detail::parallel_rows(n, max_threads, [&](std::size_t i) {
                const double s = c.grid[i];
                ZetaValue z{};
                if (fn == "zeta_h")
                    z = m == "via_a" ? zeta_h_via_a(*engine, s) : zeta_h_direct(spec, s, c.tol);
                else if (fn == "z_r")
                    z = m == "mu_series"    ? z_relativistic_mu_series(*engine, s, c.mu)
                        : m == "closed_mu0" ? z_relativistic_closed_mu0(*engine, s)
                                            : z_relativistic_direct(spec, s, c.mu, c.tol);
                else {
                    const auto stat = fn == "z_b" ? Statistics::bose : Statistics::fermi;
                    z = m == "quadrature" ? z_quantum_quadrature(spec, s, c.mu, stat, c.tol)
                                          : z_quantum_ex(spec, s, c.mu, stat, c.tol);
                }
                return detail::Row{s, z.value, z.err_estimate};
            });
            break;
        }
        case Task::expand:
        case Task::verify: {
            using namespace asymptotics;
            const auto kind = detail::trace_kind(c.statistics);
            const auto regime = c.mu == 0.0 ? MuRegime::zero : MuRegime::negative;
            const bool verify = c.task == Task::verify;
            // verification builds one order beyond K to predict the residual slope
            const auto series = build_expansion(spec.dim(), kind, regime, verify ? c.K + 1 : c.K);
            const auto base = build_expansion(spec.dim(), kind, regime, c.K);
            double pmax = -std::numeric_limits<double>::infinity();
            for (const auto& t : base.terms) pmax = std::max(pmax, t.beta_power);
            const MellinEngine engine(spec, std::max(c.tol, 1e-13));
            const auto avals = gather_a(engine, series);
            for (const auto& [key, e] : avals)
                meta << "# A" << (key.deriv ? "'" : "") << '(' << detail::shortest(key.q)
                     << ")=" << detail::shortest(e.value) << " err=" << detail::shortest(e.err) << '\n';
            {
                std::istringstream terms(dump(base));
                for (std::string line; std::getline(terms, line);) meta << "# term " << line << '\n';
            }
            if (!verify) {
                header = {"beta", "value", "err", "truncation_estimate", "terms_used"};
                rows = detail::parallel_rows(n, max_threads, [&](std::size_t i) {
                    const auto v = evaluate_expansion(series, avals, c.grid[i], c.mu);
                    return detail::Row{c.grid[i], v.value, v.err, v.truncation_estimate,
                                       static_cast<double>(v.terms_used)};
                });
                break;
            }
            header = {"beta", "direct", "expansion", "abs_residual", "rel_residual", "next_order", "pass"};
            EvalOptions opt;
            opt.optimal_truncation = false;
            opt.max_power = pmax;
            rows = detail::parallel_rows(n, max_threads, [&](std::size_t i) {
                const double beta = c.grid[i];
                const double d = detail::direct_trace(spec, c, beta);
                const auto v = evaluate_expansion(series, avals, beta, c.mu, opt);
                const auto tv = term_values(series, avals, beta, c.mu);
                double next = 0.0;
                double next_power = std::numeric_limits<double>::quiet_NaN();
                for (std::size_t j = 0; j < tv.size(); ++j) {
                    const double p = series.terms[j].beta_power;
                    if (p <= pmax) continue;
                    if (std::isnan(next_power)) next_power = p;
                    if (p == next_power) next += tv[j];
                }
                const double abs_res = std::abs(d - v.value);
                const double rel_res = abs_res / std::abs(d);
                const bool ok = !c.max_rel_residual || rel_res <= *c.max_rel_residual;
                return detail::Row{beta, d, v.value, abs_res, rel_res, std::abs(next), ok ? 1.0 : 0.0};
            });
            std::vector<double> res, nxt;
            bool points_ok = true;
            double max_rel = 0.0;
            for (const auto& r : rows) {
                res.push_back(r[3]);
                nxt.push_back(r[5]);
                points_ok = points_ok && r[6] == 1.0;
                max_rel = std::max(max_rel, r[4]);
            }
            const auto fit = fit_log_slope(c.grid, res);
            const auto pred = fit_log_slope(c.grid, nxt);
            const bool slope_ok = std::abs(fit.slope - pred.slope) <= c.slope_tol;
            std::ostringstream rep;
            rep << "points=" << n << '\n'
                << "fitted_slope=" << detail::shortest(fit.slope) << '\n'
                << "slope_halfwidth95=" << detail::shortest(fit.halfwidth95) << '\n'
                << "predicted_slope=" << detail::shortest(pred.slope) << '\n'
                << "slope_tol=" << detail::shortest(c.slope_tol) << '\n'
                << "slope_pass=" << (slope_ok ? 1 : 0) << '\n'
                << "max_rel_residual=" << detail::shortest(max_rel) << '\n';
            if (c.max_rel_residual) rep << "declared_max_rel_residual=" << detail::shortest(*c.max_rel_residual) << '\n';
            rep << "residual_pass=" << (points_ok ? 1 : 0) << '\n'
                << "status=" << (slope_ok && points_ok ? "pass" : "fail") << '\n';
            out.report = rep.str();
            if (!(std::isfinite(fit.slope) && std::isfinite(pred.slope)))
                throw Error("non-finite slope in verification report");
            out.status = slope_ok && points_ok ? 0 : 2;
            break;
        }
    }
    out.body = detail::format_rows(header, rows);
    out.metadata = meta.str();
    return out;
}

}  // namespace qheat::harness
