#pragma once

// Eigenvalue data of H = -Delta + m^2 on model geometries, and finite lists.

#include "qheat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qheat {

struct Level {
    double lambda;
    double omega;
    std::int64_t mult;
};

enum class SpectrumKind { explicit_list, circle, flat_torus, sphere2 };

/// N(Lambda) <= C (1 + Lambda)^{dim/2}.
struct GrowthBound {
    double C;
    int dim;
};

struct CountResult {
    std::int64_t count;           // multiplicity with omega < mu
    std::int64_t boundary_mult;   // multiplicity with omega == mu
    double value() const { return static_cast<double>(count) + 0.5 * static_cast<double>(boundary_mult); }
};

class Spectrum {
public:
    using LevelList = std::vector<Level>;

    static constexpr double fold_tolerance = 1e-12;
    static constexpr std::size_t max_enumerated = 4'000'000;

    static Spectrum circle(double radius, double mass_sq) {
        require_positive(radius, "circle radius");
        Spectrum s(SpectrumKind::circle, 1, mass_sq, {radius});
        s.growth_ = {2.0 * radius + 1.0, 1};
        s.check_positive_bottom();
        return s;
    }

    static Spectrum flat_torus(std::vector<double> lengths, double mass_sq) {
        if (lengths.empty()) throw DomainError("flat_torus: at least one length required");
        double c = 1.0;
        for (double l : lengths) {
            require_positive(l, "torus length");
            c *= l / std::numbers::pi + 1.0;
        }
        const int dim = static_cast<int>(lengths.size());
        Spectrum s(SpectrumKind::flat_torus, dim, mass_sq, std::move(lengths));
        s.growth_ = {c, dim};
        s.check_positive_bottom();
        return s;
    }

    static Spectrum sphere2(double radius, double mass_sq) {
        require_positive(radius, "sphere radius");
        Spectrum s(SpectrumKind::sphere2, 2, mass_sq, {radius});
        s.growth_ = {(radius + 1.0) * (radius + 1.0), 2};
        s.check_positive_bottom();
        return s;
    }

    /// Finite list of (lambda, multiplicity); mass_sq is added to every lambda.
    static Spectrum explicit_list(int dim, const std::vector<std::pair<double, std::int64_t>>& entries,
                                  double growth_c, double mass_sq = 0.0) {
        if (dim <= 0) throw InputError("explicit spectrum: dim must be positive");
        if (!(growth_c > 0.0)) throw InputError("explicit spectrum: growthC must be positive");
        if (entries.empty()) throw InputError("explicit spectrum: no eigenvalues");
        Spectrum s(SpectrumKind::explicit_list, dim, mass_sq, {});
        s.growth_ = {growth_c, dim};
        std::vector<Level> raw;
        raw.reserve(entries.size());
        for (const auto& [lambda, mult] : entries) {
            if (!std::isfinite(lambda)) throw InputError("explicit spectrum: non-finite eigenvalue");
            if (mult <= 0) throw InputError("explicit spectrum: multiplicity must be a positive integer");
            const double l = lambda + mass_sq;
            if (!(l > 0.0)) throw DomainError("explicit spectrum: positivity violated (lambda <= 0)");
            raw.push_back({l, std::sqrt(l), mult});
        }
        auto levels = fold(std::move(raw));
        std::int64_t cumulative = 0;
        for (const auto& lv : levels) {
            cumulative += lv.mult;
            if (static_cast<double>(cumulative) > growth_c * std::pow(1.0 + lv.lambda, 0.5 * dim) * (1.0 + 1e-12))
                throw InputError("explicit spectrum: growth bound N(L) <= C(1+L)^{n/2} violated");
        }
        s.state_->levels = std::make_shared<const LevelList>(std::move(levels));
        s.state_->cutoff = std::numeric_limits<double>::infinity();
        return s;
    }

    /// Header "dim=<n> growthC=<C>", then "lambda multiplicity" lines; '#' starts a comment.
    static Spectrum from_stream(std::istream& in, double mass_sq = 0.0) {
        std::string line;
        int dim = -1;
        double growth_c = -1.0;
        bool header = false;
        std::vector<std::pair<double, std::int64_t>> entries;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string first;
            if (!(ls >> first)) continue;
            if (!header) {
                std::string second;
                ls >> second;
                if (first.rfind("dim=", 0) != 0 || second.rfind("growthC=", 0) != 0)
                    throw InputError("spectrum file: expected header 'dim=<n> growthC=<C>' at line " +
                                     std::to_string(lineno));
                try {
                    dim = std::stoi(first.substr(4));
                    growth_c = std::stod(second.substr(8));
                } catch (const std::exception&) {
                    throw InputError("spectrum file: malformed header at line " + std::to_string(lineno));
                }
                header = true;
                continue;
            }
            double lambda = 0.0;
            long long mult = 0;
            std::istringstream row(line);
            std::string extra;
            if (!(row >> lambda >> mult) || (row >> extra))
                throw InputError("spectrum file: expected 'lambda multiplicity' at line " + std::to_string(lineno));
            entries.emplace_back(lambda, static_cast<std::int64_t>(mult));
        }
        if (!header) throw InputError("spectrum file: missing header");
        return explicit_list(dim, entries, growth_c, mass_sq);
    }

    static Spectrum from_file(const std::string& path, double mass_sq = 0.0) {
        std::ifstream in(path);
        if (!in) throw InputError("spectrum file: cannot open " + path);
        return from_stream(in, mass_sq);
    }

    int dim() const { return dim_; }
    double mass_sq() const { return mass_sq_; }
    SpectrumKind kind() const { return kind_; }
    const GrowthBound& growth() const { return growth_; }
    const std::vector<double>& params() const { return params_; }
    bool finite() const { return kind_ == SpectrumKind::explicit_list; }

    double lambda_min() const { return levels_below(bottom_guess())->front().lambda; }
    double omega_min() const { return std::sqrt(lambda_min()); }

    /// Largest eigenvalue of a finite spectrum; infinity otherwise.
    double lambda_max() const {
        if (!finite()) return std::numeric_limits<double>::infinity();
        return state_->levels->back().lambda;
    }

    /// Sorted, folded levels containing at least every lambda <= cutoff (possibly more).
    std::shared_ptr<const LevelList> levels_below(double cutoff) const {
        std::lock_guard<std::mutex> lock(state_->mutex);
        if (state_->levels && state_->cutoff >= cutoff) return state_->levels;
        const double target = std::max(cutoff, 2.0 * state_->cutoff);
        state_->levels = std::make_shared<const LevelList>(enumerate(target));
        state_->cutoff = target;
        return state_->levels;
    }

    /// Upper bound on sum of mult over lambda in (L, inf) weighted by f, via the growth bound.
    double growth_count(double lambda) const {
        return growth_.C * std::pow(1.0 + lambda, 0.5 * growth_.dim);
    }

    std::string describe() const {
        std::ostringstream os;
        switch (kind_) {
            case SpectrumKind::circle: os << "circle(r=" << params_[0] << ")"; break;
            case SpectrumKind::sphere2: os << "sphere2(r=" << params_[0] << ")"; break;
            case SpectrumKind::flat_torus: {
                os << "flat_torus(L=";
                for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
                os << ")";
                break;
            }
            case SpectrumKind::explicit_list: os << "explicit(levels=" << state_->levels->size() << ")"; break;
        }
        os << " m2=" << mass_sq_;
        return os.str();
    }

private:
    struct State {
        std::mutex mutex;
        std::shared_ptr<const LevelList> levels;
        double cutoff = 0.0;
    };

    Spectrum(SpectrumKind kind, int dim, double mass_sq, std::vector<double> params)
        : kind_(kind), dim_(dim), mass_sq_(mass_sq), params_(std::move(params)), state_(std::make_shared<State>()) {
        if (!std::isfinite(mass_sq) || mass_sq < 0.0) throw DomainError("mass_sq must be finite and >= 0");
    }

    static void require_positive(double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
    }

    void check_positive_bottom() const {
        if (!(mass_sq_ > 0.0)) throw DomainError("positivity violated: zero mode with m^2 = 0");
    }

    double bottom_guess() const { return mass_sq_ + 64.0 * spacing(); }

    double spacing() const {
        switch (kind_) {
            case SpectrumKind::circle: return 1.0 / (params_[0] * params_[0]);
            case SpectrumKind::sphere2: return 2.0 / (params_[0] * params_[0]);
            case SpectrumKind::flat_torus: {
                double s = 0.0;
                for (double l : params_) s = std::max(s, std::pow(2.0 * std::numbers::pi / l, 2));
                return s;
            }
            case SpectrumKind::explicit_list: return 1.0;
        }
        return 1.0;
    }

    static LevelList fold(std::vector<Level> raw) {
        std::sort(raw.begin(), raw.end(), [](const Level& a, const Level& b) { return a.lambda < b.lambda; });
        LevelList out;
        for (const auto& lv : raw) {
            if (!out.empty() && lv.lambda - out.back().lambda <= fold_tolerance * lv.lambda)
                out.back().mult += lv.mult;
            else
                out.push_back(lv);
        }
        return out;
    }

    LevelList enumerate(double cutoff) const {
        const double free = cutoff - mass_sq_;
        LevelList out;
        switch (kind_) {
            case SpectrumKind::explicit_list: return *state_->levels;
            case SpectrumKind::circle: {
                const double r = params_[0];
                const auto kmax = static_cast<std::int64_t>(std::floor(r * std::sqrt(std::max(free, 0.0))));
                if (static_cast<std::size_t>(kmax) > max_enumerated)
                    throw ConvergenceError("spectrum: enumeration cap exceeded");
                for (std::int64_t k = 0; k <= kmax; ++k) {
                    const double l = static_cast<double>(k * k) / (r * r) + mass_sq_;
                    out.push_back({l, std::sqrt(l), k == 0 ? 1 : 2});
                }
                return out;
            }
            case SpectrumKind::sphere2: {
                const double r = params_[0];
                const double lmax_real = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * r * r * std::max(free, 0.0)));
                const auto lmax = static_cast<std::int64_t>(std::floor(lmax_real));
                if (static_cast<std::size_t>(lmax) > max_enumerated)
                    throw ConvergenceError("spectrum: enumeration cap exceeded");
                for (std::int64_t l = 0; l <= lmax; ++l) {
                    const double v = static_cast<double>(l * (l + 1)) / (r * r) + mass_sq_;
                    out.push_back({v, std::sqrt(v), 2 * l + 1});
                }
                return out;
            }
            case SpectrumKind::flat_torus: return enumerate_torus(free);
        }
        return out;
    }

    // Positive-orthant lattice points, each weighted by 2^{#nonzero coordinates}.
    LevelList enumerate_torus(double free) const {
        const std::size_t n = params_.size();
        std::vector<double> step(n);
        std::vector<std::int64_t> zmax(n);
        double total = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            step[i] = 2.0 * std::numbers::pi / params_[i];
            zmax[i] = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(free, 0.0)) / step[i]));
            total *= static_cast<double>(zmax[i] + 1);
        }
        if (total > static_cast<double>(max_enumerated)) throw ConvergenceError("spectrum: enumeration cap exceeded");
        std::vector<Level> raw;
        std::vector<std::int64_t> z(n, 0);
        while (true) {
            double norm = 0.0;
            int nonzero = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double c = static_cast<double>(z[i]) * step[i];
                norm += c * c;
                nonzero += z[i] != 0;
            }
            if (norm <= free) {
                const double l = norm + mass_sq_;
                raw.push_back({l, std::sqrt(l), std::int64_t{1} << nonzero});
            }
            std::size_t i = 0;
            while (i < n && ++z[i] > zmax[i]) z[i++] = 0;
            if (i == n) break;
        }
        return fold(std::move(raw));
    }

    SpectrumKind kind_;
    int dim_;
    double mass_sq_;
    std::vector<double> params_;
    GrowthBound growth_{1.0, 1};
    std::shared_ptr<State> state_;
};

/// Model-geometry factory: circle {r}, flat_torus {L_1..L_n}, sphere2 {r}.
inline Spectrum make_spectrum(SpectrumKind kind, const std::vector<double>& params, double mass_sq) {
    switch (kind) {
        case SpectrumKind::circle:
            if (params.size() != 1) throw InputError("circle takes one parameter (radius)");
            return Spectrum::circle(params[0], mass_sq);
        case SpectrumKind::sphere2:
            if (params.size() != 1) throw InputError("sphere2 takes one parameter (radius)");
            return Spectrum::sphere2(params[0], mass_sq);
        case SpectrumKind::flat_torus: return Spectrum::flat_torus(params, mass_sq);
        case SpectrumKind::explicit_list: break;
    }
    throw InputError("make_spectrum: explicit spectra are built from a level list or file");
}

/// Multiplicity with omega < mu, and multiplicity with omega == mu (relative tolerance 1e-12).
inline CountResult counting(const Spectrum& spec, double mu) {
    CountResult r{0, 0};
    if (!(mu > 0.0)) return r;
    const double tol = Spectrum::fold_tolerance * mu;
    const double cutoff = (mu + tol) * (mu + tol);
    const auto levels = spec.levels_below(cutoff);
    for (const auto& lv : *levels) {
        if (lv.omega > mu + tol) break;
        if (std::abs(lv.omega - mu) <= tol)
            r.boundary_mult += lv.mult;
        else
            r.count += lv.mult;
    }
    return r;
}

}  // namespace qheat
