// Single-site Markov kernels for the interface measure and the chain
// driver. Both kernels handle the atom at 0, the hard wall and the external
// potential exactly; heat-bath resamples the exact conditional, Metropolis
// uses a mixture proposal (atom with probability q_atom, else a Gaussian
// step reflected at the wall) with the correct Radon-Nikodym ratio between
// the atom and the continuous part.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entropic/errors.hpp"
#include "entropic/estimators.hpp"
#include "entropic/interface_model.hpp"
#include "entropic/scaling.hpp"
#include "entropic/site_conditional.hpp"

namespace entropic {

enum class KernelKind { HeatBath, Metropolis };
enum class SweepOrder { Checkerboard, Lexicographic };

inline const char* kernel_name(KernelKind k) {
    return k == KernelKind::HeatBath ? "heat_bath" : "metropolis";
}
inline const char* order_name(SweepOrder o) {
    return o == SweepOrder::Checkerboard ? "checkerboard" : "lexicographic";
}

struct ChainSettings {
    KernelKind kernel = KernelKind::HeatBath;
    SweepOrder order = SweepOrder::Checkerboard;
    double proposal_width = 1.0;
    double q_atom = 0.2; // atom-proposal probability when upsilon > 0
    std::int64_t sweeps = 1000;
    std::int64_t burn_in = 100;
    std::int64_t thinning = 1;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    double init_height = -1.0; // < 0: pick from the height scale
};

// One chain owns one field. `active` lists the sites the kernel may touch
// (tiny oracle systems clamp everything else at 0); default is the full box.
class ChainState {
public:
    ChainState(const InterfaceModel& model, double init_height,
               SweepOrder order, std::optional<std::vector<std::int32_t>> active_sites = {})
        : field_(model.box()) {
        const auto& box = model.box();
        if (active_sites)
            active_ = std::move(*active_sites);
        else {
            active_.resize(static_cast<std::size_t>(box.size()));
            for (std::int32_t s = 0; s < box.size(); ++s) active_[s] = s;
        }
        if (order == SweepOrder::Checkerboard) {
            std::vector<std::int32_t> sorted;
            sorted.reserve(active_.size());
            for (int color = 0; color < 2; ++color)
                for (auto s : active_)
                    if (box.color(s) == color) sorted.push_back(s);
            active_ = std::move(sorted);
        }
        if (init_height > 0.0)
            for (auto s : active_) field_.set_free(s, init_height);
        energy_.add(model.energy(field_));
    }

    HeightField& field() { return field_; }
    const HeightField& field() const { return field_; }
    const std::vector<std::int32_t>& active_sites() const { return active_; }
    std::int64_t sweep_count() const { return sweeps_done_; }
    double cached_energy() const { return energy_.value(); }

    void apply(const InterfaceModel& model, std::int32_t site, SiteHeight next) {
        energy_.add(model.local_energy_delta(field_, site, next));
        field_.set(site, next);
    }

    void bump_sweep() { ++sweeps_done_; }

    // consistency checkpoint: cached energy vs. full recomputation
    void check_energy(const InterfaceModel& model, double rel_tol = 1e-8) {
        const double full = model.energy(field_);
        const double cached = energy_.value();
        const double scale = std::max(1.0, std::fabs(full));
        if (std::fabs(full - cached) > rel_tol * scale)
            throw NumericalError("ChainState: cached energy drifted from recomputation");
        energy_ = KahanSum();
        energy_.add(full);
    }

private:
    HeightField field_;
    std::vector<std::int32_t> active_;
    KahanSum energy_;
    std::int64_t sweeps_done_ = 0;
};

inline void heat_bath_site(const InterfaceModel& model, ChainState& state,
                           std::int32_t site, RngStream& rng) {
    SiteConditional cond(model, state.field(), site);
    if (model.upsilon() > 0.0 && rng.uniform_co() < cond.pin_probability()) {
        state.apply(model, site, SiteHeight::pinned());
        return;
    }
    state.apply(model, site, SiteHeight::free(cond.sample(rng)));
}

// log acceptance ratio of the Metropolis move `from -> to` at `site`,
// including the proposal-density terms of the atom/continuous mixture.
// Exposed separately so the detailed-balance check can exercise exactly
// the production formula.
inline double metropolis_accept_log_ratio(const InterfaceModel& model, const HeightField& field,
                                          std::int32_t site, SiteHeight from, SiteHeight to,
                                          double q_atom, double width) {
    auto log_gauss_refl = [&](double y) {
        // density of |x + width*z| at y, from the atom at x = 0: 2*phi_width(y)
        return std::log(2.0) - 0.5 * y * y / (width * width) -
               std::log(width) - 0.9189385332046727418; // log sqrt(2pi)
    };
    if (from.is_pinned() && to.is_pinned()) return 0.0;
    if (!from.is_pinned() && !to.is_pinned()) {
        // reflected Gaussian is symmetric: densities cancel
        return model.log_site_weight(field, site, to.value()) -
               model.log_site_weight(field, site, from.value());
    }
    const double ups = model.upsilon();
    if (to.is_pinned()) {
        if (ups <= 0.0) return -std::numeric_limits<double>::infinity();
        const double x = from.value();
        return std::log(ups) + model.log_site_weight(field, site, 0.0) +
               std::log1p(-q_atom) + log_gauss_refl(x) -
               model.log_site_weight(field, site, x) - std::log(q_atom);
    }
    // atom -> continuous
    const double y = to.value();
    if (ups <= 0.0) return std::numeric_limits<double>::infinity(); // escape a measure-zero state
    return model.log_site_weight(field, site, y) + std::log(q_atom) -
           std::log(ups) - model.log_site_weight(field, site, 0.0) -
           std::log1p(-q_atom) - log_gauss_refl(y);
}

inline void metropolis_site(const InterfaceModel& model, ChainState& state,
                            std::int32_t site, RngStream& rng,
                            double width, double q_atom) {
    const double q = model.upsilon() > 0.0 ? q_atom : 0.0;
    const SiteHeight cur = state.field().at(site);
    SiteHeight prop = cur;
    if (q > 0.0 && rng.uniform_co() < q) {
        prop = SiteHeight::pinned();
    } else {
        const double y = std::fabs(cur.value() + width * rng.normal());
        if (!(y > 0.0)) return; // measure-zero proposal, reject
        prop = SiteHeight::free(y);
    }
    const double lr = metropolis_accept_log_ratio(model, state.field(), site, cur, prop, q, width);
    if (lr >= 0.0 || std::log(rng.uniform()) <= lr)
        state.apply(model, site, prop);
}

// one pass over the active sites in the recorded order
inline void sweep(const InterfaceModel& model, ChainState& state, RngStream& rng,
                  const ChainSettings& settings) {
    for (auto site : state.active_sites()) {
        if (settings.kernel == KernelKind::HeatBath)
            heat_bath_site(model, state, site, rng);
        else
            metropolis_site(model, state, site, rng, settings.proposal_width, settings.q_atom);
    }
    state.bump_sweep();
}

inline double default_init_height(const InterfaceModel& model) {
    if (model.lambda() > 0.0)
        return std::max(0.5, height_scale(model.lambda(), model.box().dimension()));
    if (model.upsilon() >= 1.0) return 0.5;
    return std::max(0.5, std::log(static_cast<double>(model.box().side())));
}

// --- observables ----------------------------------------------------------

// value of a named observable on the current field. Names:
//   mean_height, pinned_fraction, center_height, max_height,
//   site_height:<flat-index>, slab_fraction:<ell>, cov_pair:<k>
// pinned_fraction is taken over the active sites, which is the full box in
// ordinary runs; cov_pair expands to three recorded series (.x .y .xy).
struct Observable {
    std::string name;
    enum class Kind { MeanHeight, PinnedFraction, CenterHeight, MaxHeight, SiteHeight, SlabFraction } kind;
    std::int32_t site = 0;   // SiteHeight
    double ell = 0.0;        // SlabFraction
};

inline Observable parse_observable(const std::string& name, const LatticeBox& box) {
    Observable o;
    o.name = name;
    auto arg = [&](const std::string& prefix) { return name.substr(prefix.size()); };
    if (name == "mean_height")
        o.kind = Observable::Kind::MeanHeight;
    else if (name == "pinned_fraction")
        o.kind = Observable::Kind::PinnedFraction;
    else if (name == "center_height")
        o.kind = Observable::Kind::CenterHeight;
    else if (name == "max_height")
        o.kind = Observable::Kind::MaxHeight;
    else if (name.rfind("site_height:", 0) == 0) {
        o.kind = Observable::Kind::SiteHeight;
        o.site = static_cast<std::int32_t>(std::stol(arg("site_height:")));
        if (o.site < 0 || o.site >= box.size()) throw ConfigError("observable site outside box: " + name);
    } else if (name.rfind("slab_fraction:", 0) == 0) {
        o.kind = Observable::Kind::SlabFraction;
        o.ell = std::stod(arg("slab_fraction:"));
    } else {
        throw ConfigError("unknown observable: " + name);
    }
    return o;
}

inline double measure_observable(const Observable& o, const InterfaceModel& model,
                                 const ChainState& state) {
    const auto& f = state.field();
    const auto& box = model.box();
    switch (o.kind) {
    case Observable::Kind::MeanHeight: {
        double s = 0.0;
        for (std::int32_t i = 0; i < box.size(); ++i) s += f.height(i);
        return s / static_cast<double>(box.size());
    }
    case Observable::Kind::PinnedFraction: {
        std::int64_t n = 0;
        for (auto i : state.active_sites())
            if (f.is_pinned(i)) ++n;
        return static_cast<double>(n) / static_cast<double>(state.active_sites().size());
    }
    case Observable::Kind::CenterHeight:
        return f.height(box.center());
    case Observable::Kind::MaxHeight: {
        double m = 0.0;
        for (std::int32_t i = 0; i < box.size(); ++i) m = std::max(m, f.height(i));
        return m;
    }
    case Observable::Kind::SiteHeight:
        return f.height(o.site);
    case Observable::Kind::SlabFraction: {
        std::int64_t n = 0;
        for (std::int32_t i = 0; i < box.size(); ++i)
            if (f.height(i) <= o.ell) ++n;
        return static_cast<double>(n) / static_cast<double>(box.size());
    }
    }
    return 0.0;
}

struct ChainRunResult {
    std::map<std::string, EstimatorSeries> series;
    std::int64_t sweeps_run = 0;
    std::int64_t measurements = 0;
};

// pair-covariance support: "cov_pair:<k>" records the heights at the center
// and at center + k*e_1 plus their product
struct CovPairRequest {
    int k;
    std::int32_t site_a, site_b;
};

inline ChainRunResult run_chain(const InterfaceModel& model, const ChainSettings& settings,
                                const std::vector<std::string>& observable_names,
                                std::optional<std::vector<std::int32_t>> active_sites = {},
                                ChainState* external_state = nullptr) {
    if (settings.burn_in >= settings.sweeps)
        throw ConfigError("run_chain: burn_in must be smaller than sweeps");
    const auto& box = model.box();

    std::vector<Observable> obs;
    std::vector<CovPairRequest> covs;
    for (const auto& name : observable_names) {
        if (name.rfind("cov_pair:", 0) == 0) {
            CovPairRequest req;
            req.k = static_cast<int>(std::stol(name.substr(9)));
            auto c = box.coords(box.center());
            auto shifted = c;
            shifted[0] += req.k;
            if (shifted[0] > box.radius()) throw ConfigError("cov_pair shift outside box: " + name);
            req.site_a = box.center();
            req.site_b = box.site(shifted);
            covs.push_back(req);
        } else {
            obs.push_back(parse_observable(name, box));
        }
    }

    ChainState local(model,
                     settings.init_height > 0.0 ? settings.init_height : default_init_height(model),
                     settings.order, std::move(active_sites));
    ChainState& state = external_state ? *external_state : local;
    RngStream rng(settings.seed, settings.stream);

    ChainRunResult out;
    for (const auto& o : obs) out.series.emplace(o.name, EstimatorSeries(o.name));
    for (const auto& c : covs) {
        const std::string base = "cov_pair:" + std::to_string(c.k);
        out.series.emplace(base + ".x", EstimatorSeries(base + ".x"));
        out.series.emplace(base + ".y", EstimatorSeries(base + ".y"));
        out.series.emplace(base + ".xy", EstimatorSeries(base + ".xy"));
    }

    for (std::int64_t i = 0; i < settings.burn_in; ++i) {
        sweep(model, state, rng, settings);
        if ((i + 1) % 256 == 0) state.check_energy(model);
    }
    const std::int64_t measuring = settings.sweeps - settings.burn_in;
    for (std::int64_t i = 0; i < measuring; ++i) {
        sweep(model, state, rng, settings);
        if ((i + 1) % 256 == 0) state.check_energy(model);
        if ((i + 1) % settings.thinning != 0) continue;
        for (const auto& o : obs)
            out.series.at(o.name).add(measure_observable(o, model, state));
        for (const auto& c : covs) {
            const std::string base = "cov_pair:" + std::to_string(c.k);
            const double a = state.field().height(c.site_a);
            const double b = state.field().height(c.site_b);
            out.series.at(base + ".x").add(a);
            out.series.at(base + ".y").add(b);
            out.series.at(base + ".xy").add(a * b);
        }
        ++out.measurements;
    }
    out.sweeps_run = state.sweep_count();
    return out;
}

} // namespace entropic
