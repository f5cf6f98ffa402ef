#include "genericlab/psi_reduction.hpp"

#include <algorithm>

#include "genericlab/errors.hpp"
#include "genericlab/prohorov.hpp"

namespace genericlab {

void PsiSchedule::validate(int stages) const {
    if (breakpoints.empty()) throw PreconditionError("schedule needs breakpoints");
    if (breakpoints.front() != 1) throw PreconditionError("first breakpoint must be stage 1");
    for (std::size_t k = 1; k < breakpoints.size(); ++k)
        if (breakpoints[k] <= breakpoints[k - 1])
            throw PreconditionError("breakpoints must be strictly increasing");
    for (std::size_t k = 2; k < breakpoints.size(); ++k)
        if (breakpoints[k] - breakpoints[k - 1] < breakpoints[k - 1] - breakpoints[k - 2])
            throw PreconditionError("breakpoint gaps must be weakly increasing");
    if (stages >= 1 && static_cast<std::uint64_t>(stages) > breakpoints.back())
        throw PreconditionError("stages exceed the scheduled breakpoints");
}

Rat PsiSchedule::value_at_breakpoint(std::size_t k, const std::vector<std::int64_t>& beta) const {
    auto beta_at = [&](std::size_t i) {
        if (i >= beta.size())
            throw PreconditionError("beta too short for the scheduled breakpoints");
        if (beta[i] < 0) throw PreconditionError("beta entries must be nonnegative");
        return beta[i];
    };
    if (mode == Mode::Direct) {
        Rat v(1, static_cast<unsigned long>(beta_at(k) + 1));
        v.canonicalize();
        return v;
    }
    if (k % 2 == 1) return Rat(0);
    Rat v(1, static_cast<unsigned long>(beta_at(k / 2) + 1));
    v.canonicalize();
    return v;
}

Rat PsiSchedule::psi(std::uint64_t j, const std::vector<std::int64_t>& beta) const {
    if (j < breakpoints.front() || j > breakpoints.back())
        throw PreconditionError("psi evaluated outside the scheduled range");
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
        if (breakpoints[k] == j) return value_at_breakpoint(k, beta);
        if (k + 1 < breakpoints.size() && breakpoints[k] < j && j < breakpoints[k + 1]) {
            const Rat a = value_at_breakpoint(k, beta);
            const Rat b = value_at_breakpoint(k + 1, beta);
            const std::uint64_t lo = breakpoints[k], hi = breakpoints[k + 1];
            Rat t(static_cast<unsigned long>(j - lo), static_cast<unsigned long>(hi - lo));
            t.canonicalize();
            return (Rat(1) - t) * a + t * b;
        }
    }
    throw PreconditionError("psi schedule lookup failed");
}

PsiReductionResult psi_reduction(const std::vector<std::int64_t>& beta,
                                 const PsiSchedule& schedule, const PsiReductionConfig& cfg) {
    if (cfg.stages < 1) throw PreconditionError("psi reduction needs stages >= 1");
    if (cfg.mu_targets.empty()) throw PreconditionError("psi reduction needs target measures");
    schedule.validate(cfg.stages);
    cfg.nu.validate();

    auto mu_at = [&](int j) -> const DiscreteMeasure& {
        return cfg.mu_targets[std::min<std::size_t>(j - 1, cfg.mu_targets.size() - 1)];
    };

    PsiReductionResult out;
    auto blend_at = [&](int j) {
        const Rat w = schedule.psi(j, beta);
        if (w < 0 || w > 1) throw PreconditionError("psi value outside [0,1]");
        std::vector<Rat> cs{w, Rat(1) - w};
        std::vector<DiscreteMeasure> ms{cfg.nu, mu_at(j)};
        return convex_combine(cs, ms, cfg.horizon);
    };
    for (int j = 1; j <= cfg.stages; ++j) out.stage_measures.push_back(blend_at(j));

    // The builder sizes the last stage against the next anchor; extend the
    // sequence by one blend when the schedule still covers it so that longer
    // runs share every earlier stage exactly.
    std::vector<DiscreteMeasure> build_measures = out.stage_measures;
    if (static_cast<std::uint64_t>(cfg.stages) + 1 <= schedule.breakpoints.back())
        build_measures.push_back(blend_at(cfg.stages + 1));

    out.build = build_generic_point(build_measures, cfg.eps, cfg.stages, cfg.horizon,
                                    cfg.length_cap);

    for (std::size_t k = 0; k < schedule.breakpoints.size(); ++k) {
        const std::uint64_t stage = schedule.breakpoints[k];
        if (stage > static_cast<std::uint64_t>(cfg.stages)) break;
        PsiCheckpointRow row;
        row.stage = stage;
        row.L = out.build.state.L[stage];
        row.psi_value = schedule.psi(stage, beta);
        DiscreteMeasure emp = emp_measure(out.build.y, row.L, cfg.horizon);
        row.dist_to_stage_target = prohorov(emp, out.stage_measures[stage - 1], cfg.horizon);
        row.dist_to_base_target = prohorov(emp, mu_at(static_cast<int>(stage)), cfg.horizon);
        row.stage_bound = Rat(1, static_cast<unsigned long>(stage)) +
                          Rat(7) * cfg.eps * pow2(-(static_cast<long>(stage) + 1));
        row.stage_bound.canonicalize();
        out.checkpoints.push_back(std::move(row));
    }
    return out;
}

PhiReductionResult phi_reduction(const std::vector<std::int64_t>& beta,
                                 const PsiSchedule& schedule, const PsiReductionConfig& cfg,
                                 const LocalObservable& phi) {
    const DiscreteMeasure& mubar = cfg.mu_targets.back();
    if (integrate(phi, cfg.nu) == integrate(phi, mubar))
        throw PreconditionError("observable does not separate nu from the target measure");

    PhiReductionResult out;
    out.reduction = psi_reduction(beta, schedule, cfg);

    for (int n = 1; n <= cfg.stages; ++n) {
        const std::uint64_t L = out.reduction.build.state.L[n];
        out.stage_averages.emplace_back(L, birkhoff_average(phi, out.reduction.build.y, L));
    }
    for (const auto& row : out.reduction.checkpoints) {
        const std::uint64_t L = row.L;
        out.breakpoint_averages.emplace_back(L, birkhoff_average(phi, out.reduction.build.y, L));
    }
    for (std::size_t k = 0; k + 1 < out.breakpoint_averages.size(); ++k) {
        Rat swing = out.breakpoint_averages[k + 1].second - out.breakpoint_averages[k].second;
        out.breakpoint_swings.push_back(abs(swing));
    }
    return out;
}

} // namespace genericlab
