#pragma once

// Small-beta expansions of the relativistic and quantum heat traces.

#include "qheat/errors.hpp"
#include "qheat/mellin.hpp"
#include "qheat/numerics.hpp"
#include "qheat/specfun.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qheat::asymptotics {

using specfun::Rational;

enum class Lemma1Family { I1, I2, I3, J1, J2, J3, J4 };
enum class TraceKind { relativistic, bose, fermi };
enum class MuRegime { negative, zero };
enum class Parity { even, odd };
enum class Part { sing, loc, nonloc, residue };
enum class FactorKind { none, f, df, zeta_const };

inline std::string to_string(Part p) {
    switch (p) {
        case Part::sing: return "sing";
        case Part::loc: return "loc";
        case Part::nonloc: return "nonloc";
        case Part::residue: return "residue";
    }
    return "?";
}

inline std::string to_string(TraceKind k) {
    switch (k) {
        case TraceKind::relativistic: return "relativistic";
        case TraceKind::bose: return "bose";
        case TraceKind::fermi: return "fermi";
    }
    return "?";
}

inline std::string to_string(MuRegime r) { return r == MuRegime::zero ? "zero" : "negative"; }

namespace detail {

inline Rational factorial_q(int k) {
    Rational r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

inline int sign_pow(int k) { return k % 2 == 0 ? 1 : -1; }

inline double psi_int(int k) { return specfun::digamma(static_cast<double>(k)); }

}  // namespace detail

/// Coefficient of t^{power} f(q) (J3: of log t * t^{power} f(q); J4: of t^{power} f'(q))
/// in the small-t expansion of the Mellin-Barnes integrals
/// I(t) with Gamma(-q) Gamma(m+1/2-q) and J(t) with Gamma(-q) Gamma(m+1-q).
inline double lemma1_coefficients(Lemma1Family family, int m, int k) {
    using detail::factorial_q;
    if (m < 0 || k < 0) throw DomainError("lemma1_coefficients: m and k must be non-negative");
    if ((family == Lemma1Family::I1 || family == Lemma1Family::J1) && k > m)
        throw DomainError("lemma1_coefficients: I1/J1 require k <= m");
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    const int sm = detail::sign_pow(m);
    switch (family) {
        case Lemma1Family::I1: {
            const Rational r = Rational(detail::sign_pow(k)) * factorial_q(2 * m - 2 * k) /
                               (factorial_q(k) * factorial_q(m - k));
            return sqrt_pi * static_cast<double>(r) * std::ldexp(1.0, 2 * k - 2 * m);
        }
        case Lemma1Family::I2: {
            const Rational r = Rational(sm) * factorial_q(k) / (factorial_q(k + m + 1) * factorial_q(2 * k + 1));
            return 0.5 * sqrt_pi * static_cast<double>(r) * std::ldexp(1.0, 2 * k + 2);
        }
        case Lemma1Family::I3: {
            const Rational r =
                Rational(-sm) * factorial_q(k + m) / (factorial_q(k) * factorial_q(2 * k + 2 * m + 1));
            return 0.5 * sqrt_pi * static_cast<double>(r) * std::ldexp(1.0, 2 * k + 2 * m + 2);
        }
        case Lemma1Family::J1:
            return static_cast<double>(Rational(detail::sign_pow(k)) * factorial_q(m - k) / factorial_q(k));
        case Lemma1Family::J2: {
            const double base = static_cast<double>(Rational(sm) / (factorial_q(k) * factorial_q(k + m + 1)));
            return -base * (detail::psi_int(k + m + 2) + detail::psi_int(k + 1));
        }
        case Lemma1Family::J3:
        case Lemma1Family::J4:
            return static_cast<double>(Rational(sm) / (factorial_q(k) * factorial_q(k + m + 1)));
    }
    throw DomainError("lemma1_coefficients: unknown family");
}

/// rational * pi^{pi_half/2} * 2^{two_pow}
struct Prefactor {
    Rational rational = 1;
    int pi_half = 0;
    int two_pow = 0;

    double value() const {
        return static_cast<double>(rational) * std::pow(std::numbers::pi, 0.5 * pi_half) * std::ldexp(1.0, two_pow);
    }
    bool operator==(const Prefactor&) const = default;
};

struct ExpansionTerm {
    Part part = Part::sing;
    double beta_power = 0.0;
    bool log_flag = false;
    Prefactor prefactor{};
    double multiplier = 1.0;  // psi sums and log 2 pieces
    double coeff = 0.0;       // prefactor.value() * multiplier
    FactorKind factor = FactorKind::none;
    int f_arg = 0;
    double zeta_const = 0.0;
    double a_index = 0.0;
    bool a_deriv = false;
    int k = 0;
};

struct ExpansionSeries {
    int dim;
    int m;
    Parity parity;
    TraceKind trace_kind;
    MuRegime mu_regime;
    int K;
    std::vector<ExpansionTerm> terms;
};

namespace detail {

struct Builder {
    ExpansionSeries& s;

    // Statistic factor at integer argument arg; returns false when the term vanishes identically.
    bool attach_factor(ExpansionTerm& t, int arg, bool deriv) const {
        if (s.trace_kind == TraceKind::relativistic) {
            if (deriv) return false;
            t.factor = FactorKind::none;
            return true;
        }
        t.f_arg = arg;
        if (s.mu_regime == MuRegime::negative) {
            t.factor = deriv ? FactorKind::df : FactorKind::f;
            return true;
        }
        t.factor = FactorKind::zeta_const;
        const double x = arg;
        if (s.trace_kind == TraceKind::bose)
            t.zeta_const = deriv ? specfun::riemann_zeta_prime(x) : specfun::riemann_zeta(x);
        else
            t.zeta_const = deriv ? specfun::dirichlet_eta_prime(x) : specfun::dirichlet_eta(x);
        return true;
    }

    void push(ExpansionTerm t) {
        t.coeff = t.prefactor.value() * t.multiplier;
        s.terms.push_back(t);
    }

    void odd() {
        const int m = s.m;
        const bool bose0 = s.trace_kind == TraceKind::bose && s.mu_regime == MuRegime::zero;
        // P = 2 (4 pi)^{-m-1}
        const int pi_p = -2 * (m + 1);
        const int two_p = -2 * m - 1;
        for (int k = 0; k <= m; ++k) {
            if (bose0 && k == m) continue;
            ExpansionTerm t{Part::sing, -(2.0 * m - 2.0 * k + 1.0)};
            t.prefactor = {Rational(sign_pow(k)) * factorial_q(m - k) / factorial_q(k), pi_p, two_p + 2 * m - 2 * k + 1};
            t.a_index = k;
            t.k = k;
            if (attach_factor(t, 2 * m + 1 - 2 * k, false)) push(t);
        }
        for (int k = 0; k <= s.K; ++k) {
            const Rational base = Rational(-sign_pow(m)) / (factorial_q(k) * factorial_q(k + m + 1));
            const double power = 2.0 * k + 1.0;
            const int arg = -2 * k - 1;
            ExpansionTerm d{Part::loc, power};
            d.prefactor = {base, pi_p, two_p - (2 * k + 1) + 1};
            d.a_index = k + m + 1;
            d.k = k;
            if (attach_factor(d, arg, true)) push(d);

            ExpansionTerm f{Part::loc, power};
            f.prefactor = {base, pi_p, two_p - (2 * k + 1)};
            f.multiplier = psi_int(k + m + 2) + psi_int(k + 1) + 2.0 * std::numbers::ln2;
            f.a_index = k + m + 1;
            f.k = k;
            if (attach_factor(f, arg, false)) push(f);

            ExpansionTerm l{Part::loc, power, true};
            l.prefactor = {-base, pi_p, two_p - (2 * k + 1) + 1};
            l.a_index = k + m + 1;
            l.k = k;
            if (attach_factor(l, arg, false)) push(l);

            ExpansionTerm nl{Part::nonloc, power};
            nl.prefactor = {-base, pi_p, two_p - (2 * k + 1)};
            nl.a_index = k + m + 1;
            nl.a_deriv = true;
            nl.k = k;
            if (attach_factor(nl, arg, false)) push(nl);
        }
        if (bose0) {
            // S~(beta) = -2 (-1)^m / m! (4 pi)^{-m-1} beta^{-1} {A'_m - [psi(m+1) - psi(1)] A_m + 2 log(beta/2) A_m}
            const Rational c = Rational(-2 * sign_pow(m)) / factorial_q(m);
            const int two_c = -2 * (m + 1);
            ExpansionTerm r1{Part::residue, -1.0};
            r1.prefactor = {c, pi_p, two_c};
            r1.a_index = m;
            r1.a_deriv = true;
            r1.k = m;
            push(r1);
            ExpansionTerm r2{Part::residue, -1.0};
            r2.prefactor = {c, pi_p, two_c};
            r2.multiplier = -(psi_int(m + 1) - psi_int(1)) - 2.0 * std::numbers::ln2;
            r2.a_index = m;
            r2.k = m;
            push(r2);
            ExpansionTerm r3{Part::residue, -1.0, true};
            r3.prefactor = {c, pi_p, two_c + 1};
            r3.a_index = m;
            r3.k = m;
            push(r3);
        }
    }

    void even() {
        const int m = s.m;
        const bool zero = s.mu_regime == MuRegime::zero && s.trace_kind != TraceKind::relativistic;
        for (int k = 0; k <= m; ++k) {
            ExpansionTerm t{Part::sing, 2.0 * k - 2.0 * m};
            t.prefactor = {Rational(sign_pow(k)) * factorial_q(2 * m - 2 * k) / (factorial_q(k) * factorial_q(m - k)),
                           -2 * m, -2 * m};
            t.a_index = k;
            t.k = k;
            if (attach_factor(t, 2 * m - 2 * k, false)) push(t);
        }
        for (int k = 0; k <= s.K; ++k) {
            // F(-2k-2, 0) = 0 for both statistics: no local terms at mu = 0
            if (!zero) {
                ExpansionTerm l{Part::loc, 2.0 * k + 2.0};
                l.prefactor = {Rational(sign_pow(m)) * factorial_q(k) / (factorial_q(k + m + 1) * factorial_q(2 * k + 1)),
                               -2 * m, -2 * m - 1};
                l.a_index = k + m + 1;
                l.k = k;
                if (attach_factor(l, -2 * k - 2, false)) push(l);
            }
            ExpansionTerm nl{Part::nonloc, 2.0 * k + 1.0};
            nl.prefactor = {Rational(-sign_pow(m)) * factorial_q(k + m) / (factorial_q(k) * factorial_q(2 * k + 2 * m + 1)),
                            -2 * m, 0};
            nl.a_index = k + m + 0.5;
            nl.k = k;
            if (attach_factor(nl, -2 * k - 1, false)) push(nl);
        }
        if (zero && s.trace_kind == TraceKind::bose) {
            ExpansionTerm r{Part::residue, -1.0};
            r.prefactor = {Rational(sign_pow(m)) * factorial_q(m) / factorial_q(2 * m), -2 * m, 0};
            r.a_index = m - 0.5;
            r.k = m;
            push(r);
        }
    }
};

inline bool term_before(const ExpansionTerm& a, const ExpansionTerm& b) {
    if (a.beta_power != b.beta_power) return a.beta_power < b.beta_power;
    return !a.log_flag && b.log_flag;
}

}  // namespace detail

inline void sort_terms(ExpansionSeries& s) { std::stable_sort(s.terms.begin(), s.terms.end(), detail::term_before); }

inline void check_series_invariants(const ExpansionSeries& s) {
    long sing = 0, loc = 0;
    for (const auto& t : s.terms) {
        sing += t.part == Part::sing;
        loc += t.part == Part::loc;
        const int set = (t.factor == FactorKind::f || t.factor == FactorKind::df) + (t.factor == FactorKind::zeta_const);
        if (set > 1) throw Error("expansion: term carries both f_arg and zeta_const");
        if (s.trace_kind == TraceKind::relativistic && t.part != Part::nonloc && t.a_index < 0.0)
            throw Error("expansion: local term with negative A index");
    }
    const bool bose0 = s.trace_kind == TraceKind::bose && s.mu_regime == MuRegime::zero;
    const long expected = s.parity == Parity::even ? s.m + 1 : (bose0 ? s.m : s.m + 1);
    if (sing != expected) throw Error("expansion: singular part has the wrong number of terms");
    if (s.parity == Parity::even && s.mu_regime == MuRegime::zero && s.trace_kind != TraceKind::relativistic && loc != 0)
        throw Error("expansion: even-dimensional mu=0 series must have no local terms");
}

/// Symbolic term list for the small-beta expansion of Theta_r (any regime) or Theta_{b,f}.
inline ExpansionSeries build_expansion(int n, TraceKind kind, MuRegime regime, int K) {
    if (n < 1) throw DomainError("build_expansion: dimension must be positive");
    if (K < 0) throw DomainError("build_expansion: K must be non-negative");
    ExpansionSeries s{n, n / 2, n % 2 == 0 ? Parity::even : Parity::odd, kind, regime, K, {}};
    detail::Builder b{s};
    if (s.parity == Parity::odd)
        b.odd();
    else
        b.even();
    sort_terms(s);
    check_series_invariants(s);
    return s;
}

namespace detail {

inline bool same_slot(const ExpansionTerm& a, const ExpansionTerm& b) {
    return a.part == b.part && a.beta_power == b.beta_power && a.log_flag == b.log_flag && a.factor == b.factor &&
           a.f_arg == b.f_arg && a.zeta_const == b.zeta_const && a.a_index == b.a_index && a.a_deriv == b.a_deriv;
}

inline void add_numeric(std::vector<ExpansionTerm>& out, ExpansionTerm t) {
    t.coeff = t.prefactor.value() * t.multiplier;
    for (auto& e : out)
        if (same_slot(e, t)) {
            e.multiplier += t.multiplier;
            e.coeff = e.prefactor.value() * e.multiplier;
            return;
        }
    out.push_back(t);
}

}  // namespace detail

/// Theta_r expansion obtained by applying the residue coefficient families to
/// f(q) = (beta/2)^{2q-n} A_q with prefactor 2 (4 pi)^{-(n+1)/2}.
inline ExpansionSeries build_relativistic_via_lemma1(int n, int K) {
    if (n < 1 || K < 0) throw DomainError("build_relativistic_via_lemma1: need n >= 1, K >= 0");
    using F = Lemma1Family;
    ExpansionSeries s{n, n / 2, n % 2 == 0 ? Parity::even : Parity::odd, TraceKind::relativistic, MuRegime::zero, K, {}};
    const int m = s.m;
    const double pre = 2.0 * std::pow(4.0 * std::numbers::pi, -0.5 * (n + 1));
    auto term = [&](Part part, double power, bool log, double c, double q, bool deriv, int k) {
        ExpansionTerm t{part, power, log};
        t.multiplier = c;
        t.a_index = q;
        t.a_deriv = deriv;
        t.k = k;
        detail::add_numeric(s.terms, t);
    };
    // t = (beta/2)^2, (beta/2)^{2q-n} = 2^{n-2q} beta^{2q-n}
    if (s.parity == Parity::odd) {
        for (int k = 0; k <= m; ++k)
            term(Part::sing, 2.0 * k - n, false, pre * lemma1_coefficients(F::J1, m, k) * std::ldexp(1.0, n - 2 * k), k,
                 false, k);
        for (int k = 0; k <= K; ++k) {
            const double q = k + m + 1;
            const double scale = pre * std::ldexp(1.0, -(2 * k + 1));
            term(Part::loc, 2.0 * k + 1, false, scale * lemma1_coefficients(F::J2, m, k), q, false, k);
            // log t = 2 log beta - 2 log 2
            const double j3 = scale * lemma1_coefficients(F::J3, m, k);
            term(Part::loc, 2.0 * k + 1, false, -2.0 * std::numbers::ln2 * j3, q, false, k);
            term(Part::loc, 2.0 * k + 1, true, 2.0 * j3, q, false, k);
            term(Part::nonloc, 2.0 * k + 1, false, scale * lemma1_coefficients(F::J4, m, k), q, true, k);
        }
    } else {
        for (int k = 0; k <= m; ++k)
            term(Part::sing, 2.0 * k - n, false, pre * lemma1_coefficients(F::I1, m, k) * std::ldexp(1.0, n - 2 * k), k,
                 false, k);
        for (int k = 0; k <= K; ++k) {
            term(Part::loc, 2.0 * k + 2, false,
                 pre * lemma1_coefficients(F::I2, m, k) * std::ldexp(1.0, -(2 * k + 2)), k + m + 1, false, k);
            term(Part::nonloc, 2.0 * k + 1, false,
                 pre * lemma1_coefficients(F::I3, m, k) * std::ldexp(1.0, -(2 * k + 1)), k + m + 0.5, false, k);
        }
    }
    sort_terms(s);
    return s;
}

// ---------------------------------------------------------------------------

struct AKey {
    double q;
    bool deriv;
    auto operator<=>(const AKey&) const = default;
};

struct AEntry {
    double value;
    double err;
};

using AValues = std::map<AKey, AEntry>;

inline std::vector<AKey> required_a(const ExpansionSeries& s) {
    std::vector<AKey> keys;
    for (const auto& t : s.terms) {
        const AKey k{t.a_index, t.a_deriv};
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

inline AValues gather_a(const MellinEngine& engine, const ExpansionSeries& s) {
    AValues out;
    for (const auto& key : required_a(s)) {
        const auto r = key.deriv ? engine.a_q_prime(key.q) : engine.a_q(key.q);
        out[key] = {r.value, r.err_estimate};
    }
    return out;
}

struct EvalOptions {
    bool optimal_truncation = true;
    double max_power = std::numeric_limits<double>::infinity();  // include terms with beta_power <= max_power
};

struct ExpansionValue {
    double value;
    double err;                  // propagated from the A errors
    double truncation_estimate;  // magnitude of the first omitted order
    std::size_t terms_used;
};

/// Per-term numerical values coeff beta^p (log beta)^flag factor A, in series order.
inline std::vector<double> term_values(const ExpansionSeries& s, const AValues& a, double beta, double mu,
                                       std::vector<double>* a_sensitivity = nullptr) {
    if (!(beta > 0.0)) throw DomainError("evaluate_expansion: beta must be positive");
    if (mu > 0.0) throw DomainError("evaluate_expansion: mu must be non-positive");
    if (s.trace_kind != TraceKind::relativistic) {
        if (s.mu_regime == MuRegime::zero && mu != 0.0) throw DomainError("evaluate_expansion: zero regime needs mu = 0");
        if (s.mu_regime == MuRegime::negative && s.trace_kind == TraceKind::bose && !(mu < 0.0))
            throw DomainError("evaluate_expansion: bose negative regime needs mu < 0");
    }
    const auto stat = s.trace_kind == TraceKind::bose ? Statistics::bose : Statistics::fermi;
    const double x = beta * mu;
    std::map<std::pair<int, int>, double> fcache;
    auto fval = [&](int arg, int deriv) {
        const auto key = std::make_pair(arg, deriv);
        auto it = fcache.find(key);
        if (it != fcache.end()) return it->second;
        const double v = specfun::f_statistic(arg, x, stat, deriv);
        fcache.emplace(key, v);
        return v;
    };
    std::vector<double> out;
    out.reserve(s.terms.size());
    if (a_sensitivity) a_sensitivity->clear();
    const double lb = std::log(beta);
    for (const auto& t : s.terms) {
        auto it = a.find({t.a_index, t.a_deriv});
        if (it == a.end())
            throw InputError("evaluate_expansion: missing A" + std::string(t.a_deriv ? "'" : "") + " at q=" +
                             std::to_string(t.a_index));
        double bare = t.coeff * std::pow(beta, t.beta_power);
        if (t.log_flag) bare *= lb;
        switch (t.factor) {
            case FactorKind::none: break;
            case FactorKind::f: bare *= fval(t.f_arg, 0); break;
            case FactorKind::df: bare *= fval(t.f_arg, 1); break;
            case FactorKind::zeta_const: bare *= t.zeta_const; break;
        }
        out.push_back(bare * it->second.value);
        if (a_sensitivity) a_sensitivity->push_back(std::abs(bare) * it->second.err);
    }
    return out;
}

/// Sums the series order by order; with optimal truncation, positive orders stop once an order's
/// magnitude exceeds the last included one.
inline ExpansionValue evaluate_expansion(const ExpansionSeries& s, const AValues& a, double beta, double mu,
                                         const EvalOptions& opt = {}) {
    std::vector<double> sens;
    const auto vals = term_values(s, a, beta, mu, &sens);
    numerics::Sum acc;
    double err = 0.0;
    double last_mag = std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double truncation = 0.0;
    std::size_t i = 0;
    while (i < vals.size()) {
        std::size_t j = i;
        double group = 0.0;
        while (j < vals.size() && s.terms[j].beta_power == s.terms[i].beta_power) group += vals[j++];
        const double p = s.terms[i].beta_power;
        const double mag = std::abs(group);
        const bool beyond = p > opt.max_power;
        const bool diverging = opt.optimal_truncation && p > 0.0 && mag > last_mag;
        if (beyond || diverging) {
            truncation = mag;
            break;
        }
        for (std::size_t q = i; q < j; ++q) {
            acc += vals[q];
            err += sens[q];
        }
        used = j;
        if (mag > 0.0) last_mag = mag;
        i = j;
    }
    return {acc.value(), err, truncation, used};
}

namespace detail {

inline std::string shortest(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

}  // namespace detail

/// One line per term: part beta_power log_flag coeff factor a_index a_deriv.
inline std::string dump(const ExpansionSeries& s) {
    std::ostringstream os;
    for (const auto& t : s.terms) {
        os << to_string(t.part) << ' ' << detail::shortest(t.beta_power) << ' ' << (t.log_flag ? 1 : 0) << ' '
           << detail::shortest(t.coeff) << ' ';
        switch (t.factor) {
            case FactorKind::none: os << '-'; break;
            case FactorKind::f: os << "F:" << t.f_arg; break;
            case FactorKind::df: os << "dF:" << t.f_arg; break;
            case FactorKind::zeta_const: os << "Z:" << detail::shortest(t.zeta_const); break;
        }
        os << ' ' << detail::shortest(t.a_index) << ' ' << (t.a_deriv ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace qheat::asymptotics
