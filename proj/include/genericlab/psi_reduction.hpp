#pragma once

#include <cstdint>
#include <vector>

#include "genericlab/birkhoff.hpp"
#include "genericlab/measure.hpp"
#include "genericlab/rational.hpp"
#include "genericlab/tracing.hpp"

namespace genericlab {

// Piecewise-linear weight profile over stage indices. Breakpoints are stage
// numbers starting at 1 with weakly increasing gaps. Direct mode pins the
// value 1/(beta(k)+1) at breakpoint k; Alternating mode pins 1/(beta(k)+1) at
// even breakpoints and 0 at odd ones.
struct PsiSchedule {
    enum class Mode { Direct, Alternating };
    std::vector<std::uint64_t> breakpoints;
    Mode mode = Mode::Direct;

    void validate(int stages) const;
    Rat value_at_breakpoint(std::size_t k, const std::vector<std::int64_t>& beta) const;
    Rat psi(std::uint64_t j, const std::vector<std::int64_t>& beta) const; // j in [bp0, bp_last]
};

struct PsiCheckpointRow {
    std::uint64_t stage = 0; // breakpoint stage index
    std::uint64_t L = 0;
    Rat psi_value{0};
    Rat dist_to_stage_target{0}; // D(Emp(y,L), mu^beta_stage)
    Rat dist_to_base_target{0};  // D(Emp(y,L), mu_stage) ignoring the nu part
    Rat stage_bound{0};          // 1/n + 7 eps/2^{n+1}
};

struct PsiReductionResult {
    GenericBuildResult build;
    std::vector<DiscreteMeasure> stage_measures; // mu^beta_1..mu^beta_stages
    std::vector<PsiCheckpointRow> checkpoints;
};

struct PsiReductionConfig {
    DiscreteMeasure nu;
    std::vector<DiscreteMeasure> mu_targets; // padded with its last element
    Rat eps;
    int stages = 0;
    std::uint64_t horizon = 64;
    std::uint64_t length_cap = 80'000'000;
};

// Builds the generic point for the blended sequence
// mu^beta_j = psi(j) nu + (1 - psi(j)) mu_j and reports checkpoint distances.
PsiReductionResult psi_reduction(const std::vector<std::int64_t>& beta,
                                 const PsiSchedule& schedule, const PsiReductionConfig& cfg);

struct PhiReductionResult {
    PsiReductionResult reduction;
    std::vector<std::pair<std::uint64_t, Rat>> stage_averages;   // (L_n, A_{L_n} phi)
    std::vector<std::pair<std::uint64_t, Rat>> breakpoint_averages;
    std::vector<Rat> breakpoint_swings; // |A at bp_{k+1} - A at bp_k|
};

// Alternating-mode variant observed through a separating observable. Errors
// when phi does not separate nu from the constant target.
PhiReductionResult phi_reduction(const std::vector<std::int64_t>& beta,
                                 const PsiSchedule& schedule, const PsiReductionConfig& cfg,
                                 const LocalObservable& phi);

} // namespace genericlab
