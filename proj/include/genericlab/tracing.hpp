#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genericlab/measure.hpp"
#include "genericlab/point.hpp"
#include "genericlab/prohorov.hpp"
#include "genericlab/rational.hpp"
#include "genericlab/shift_space.hpp"
#include "genericlab/specification.hpp"

namespace genericlab {

// max over j in Lambda of rho(shift(x,j), shift(y,j), horizon).
Rat bowen_distance(const Point& x, const Point& y, const std::vector<std::uint64_t>& lambda,
                   std::uint64_t horizon);
bool bowen_ball_member(const Point& y, const Point& x, const std::vector<std::uint64_t>& lambda,
                       const Rat& eps, std::uint64_t horizon);

struct TraceSegmentReport {
    std::uint64_t length = 0;
    std::uint64_t gap_before = 0;   // 0 for the first segment
    std::uint64_t lambda_size = 0;  // agreeing indices
    std::uint64_t errors = 0;       // complement of Lambda
    std::vector<std::uint64_t> lambda;
};

struct TraceReport {
    bool verdict = false;
    std::vector<std::uint64_t> gaps; // s_1..s_{k-1}
    std::vector<TraceSegmentReport> segments;
    std::uint64_t total_length = 0; // iterates required to trace
    std::string note;
};

// Concatenates the segments and extends periodically by the last segment's
// word. On the full shift the result traces the specification with zero gaps
// and zero errors for every eps.
Point trace_full_shift(const Specification& xi, const ShiftSpace& space = ShiftSpace::full_shift());

// Checks the approximate-tracing conditions: the first segment must match
// with no errors, later segments may drop up to delta1*n_j indices and sit
// after gaps of at most delta2*n_j. Gap search is smallest-first with
// backtracking; the first witness found wins. Per-index closeness is judged
// on the remaining segment window, so no check inspects symbols beyond the
// segment being traced.
TraceReport verify_trace(const Point& y, const Specification& xi, const Rat& eps,
                         const Rat& delta1, const Rat& delta2);

struct CloseSegmentsCheck {
    bool precondition_ok = true;
    std::string precondition_msg;
    Rat lhs{0}; // D(Emp(xbar), Emp(ybar))
    Rat rhs{0}; // 2*gamma + delta + eps
    bool holds = false;
};

// Matched-subsequence distance bound: with j >= (1-gamma)k matched pairs at
// rho < eps and k <= l <= (1+delta)k, the empirical measures sit within
// 2*gamma + delta + eps. Both sides are computed exactly.
CloseSegmentsCheck close_segments_bound_check(const std::vector<Point>& xbar,
                                              const std::vector<Point>& ybar,
                                              const std::vector<std::pair<std::size_t, std::size_t>>& matching,
                                              const Rat& gamma, const Rat& delta, const Rat& eps,
                                              std::uint64_t horizon);

struct ProtogenericResult {
    Point x;            // purely periodic; one period is one concatenation round
    std::uint64_t Q;    // D(mu, Emp(x, n*Q)) < eps for every n >= 1
    std::uint64_t K;    // per-segment length used in the round
    Rat achieved;       // exact D(mu, Emp(x, Q))
    Specification round_spec;
};

// Constructive near-generic point for a rational convex combination of
// periodic orbit measures: repeats each periodic point for K steps per unit
// weight and certifies the distance by an exact prohorov call.
ProtogenericResult protogeneric(const DiscreteMeasure& mu, const Rat& eps, std::uint64_t n,
                                std::uint64_t horizon);

struct StageCertificate {
    int n = 0;
    std::uint64_t K = 0, ell = 0, L = 0;
    Rat bound{0};    // 1/n + 7*eps/2^{n+1}
    Rat achieved{0}; // D(Emp(y, L_n), mu_n)
    bool pass = false;
    // Term decomposition along the stage estimate, each checked exactly.
    Rat term_limit_shift{0};  // <= eps/2^n
    Rat term_trace{0};        // <= 4*eps/2^{n+1}
    Rat term_drop_head{0};    // <= 1/n
    Rat term_anchor{0};       // <= eps/2^{n+1}
    bool terms_pass = false;
};

struct GenericBuildState {
    int stages = 0;
    Rat eps{0};
    std::uint64_t horizon = 0;
    std::vector<std::uint64_t> K, ell, L; // 1-based by stage (index 0 unused except L[0])
    std::vector<Point> anchors;           // x_1..x_S
};

struct GenericBuildResult {
    Point y; // block description; prefix(L[stages]) is the built prefix
    GenericBuildState state;
    std::vector<StageCertificate> certificate;
};

// Stagewise generic-point builder on the full shift: stage n appends ell_n
// repetitions of the anchor block for mu_n after the previous prefix, with
// ell_n large enough that every certificate row closes. Input measures must
// have rational weights and periodic-point support; when fewer measures than
// stages are supplied the last one repeats.
GenericBuildResult build_generic_point(const std::vector<DiscreteMeasure>& mus, const Rat& eps,
                                       int stages, std::uint64_t horizon,
                                       std::uint64_t length_cap = 80'000'000);

} // namespace genericlab
