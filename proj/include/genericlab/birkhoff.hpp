#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "genericlab/measure.hpp"
#include "genericlab/point.hpp"
#include "genericlab/rational.hpp"

namespace genericlab {

// Bounded observable depending on finitely many coordinates: a total rational
// table over windows of a fixed length, with a default for unlisted windows.
struct LocalObservable {
    int window = 1;
    std::map<Word, Rat> table;
    Rat default_value{0};

    static LocalObservable cylinder_indicator(const Word& w);
    static LocalObservable constant(const Rat& c);

    Rat eval_window(const Word& w) const; // uses the first `window` symbols
    Rat eval(const Point& x) const { return eval_window(x.prefix(window)); }
    Rat bound() const; // max |value|
};

// Exact k-step ergodic average by direct summation.
Rat birkhoff_average(const LocalObservable& phi, const Point& x, std::uint64_t k);

// The same value via integration against the empirical measure; must agree
// with birkhoff_average exactly whenever horizon >= phi.window.
Rat birkhoff_average_via_emp(const LocalObservable& phi, const Point& x, std::uint64_t k,
                             std::uint64_t horizon);

Rat integrate(const LocalObservable& phi, const DiscreteMeasure& mu);

struct AverageSeries {
    std::vector<std::pair<std::uint64_t, Rat>> values; // (k, A_k phi), k increasing
    Rat liminf_est{0};
    Rat limsup_est{0};
    std::uint64_t window_lo = 0, window_hi = 0;
};

AverageSeries average_series(const LocalObservable& phi, const Point& x,
                             const std::vector<std::uint64_t>& ks);

enum class RegularityVerdict { Regular, Irregular, Undecided };

struct RegularityReport {
    RegularityVerdict verdict = RegularityVerdict::Undecided;
    Rat alpha{0};  // midpoint estimate when Regular
    Rat gap{0};    // witnessed spread when Irregular
    Rat spread{0}; // limsup_est - liminf_est over the tail window
    AverageSeries tail;
};

// Finite-horizon three-valued classifier over the tail window [tau*K, K].
// Regular when the spread is below eta; Irregular when the spread exceeds
// 2*eta and the series swings back at least eta-deep on both sides after
// hitting its extremes (rules out one-way drift); otherwise Undecided.
RegularityReport regularity_report(const LocalObservable& phi, const Point& x,
                                   std::uint64_t K, const Rat& tau, const Rat& eta);

struct VsetRow {
    std::uint64_t n;
    std::size_t target_id;
    Rat distance;
};

struct VsetDiagnostics {
    std::vector<VsetRow> rows;
    std::vector<std::tuple<std::uint64_t, std::uint64_t, Rat>> cauchy; // consecutive checkpoints
    std::vector<Rat> min_distance_per_target;
};

// Distance table D(Emp(x,n), target) over checkpoints, plus the Cauchy
// diagnostic between consecutive checkpoints.
VsetDiagnostics vset_diagnostics(const Point& x, const std::vector<DiscreteMeasure>& targets,
                                 const std::vector<std::uint64_t>& checkpoints,
                                 std::uint64_t horizon);

} // namespace genericlab
