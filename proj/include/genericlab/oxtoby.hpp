#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "genericlab/point.hpp"
#include "genericlab/rational.hpp"
#include "genericlab/shift_space.hpp"

namespace genericlab {

// Staged word machine over {0,1} with a placeholder-filling recurrence:
//   W_0 = x,  Z_0 = 0,  O_0 = 1
//   odd n:  W_n = Z_{n-1} W_{n-1}^{s_n-1},  Z_n = Z_{n-1}^{s_n},        O_n = Z_{n-1} O_{n-1}^{s_n-1}
//   even n: W_n = O_{n-1} W_{n-1}^{s_n-1},  Z_n = O_{n-1} Z_{n-1}^{s_n-1}, O_n = O_{n-1}^{s_n}
// Parameters must satisfy s_j >= 3 and sum(1/s_j) < 1 on the configured
// prefix. Counts and frequencies are exact at every depth; words materialize
// only under the cap.
class OxtobyMachine {
public:
    static OxtobyMachine build(std::vector<std::uint64_t> s, int depth,
                               std::uint64_t word_cap = 8'000'000);

    int depth() const { return depth_; }
    std::uint64_t s_at(int j) const; // 1-based
    const std::vector<std::uint64_t>& s_list() const { return s_; }

    Int length(int n) const;      // l_n
    Int ones_in_zeros(int n) const;  // c(Z_n)
    Int ones_in_ones(int n) const;   // c(O_n)
    Rat m_zeros(int n) const;     // m(Z_n)
    Rat m_ones(int n) const;      // m(O_n)
    Rat gap_product(int n) const; // prod_{j<=n} (1 - 1/s_j) = m(O_n) - m(Z_n)

    // Depth-limited view of the symbol-1 frequency limits: the lower value is
    // exact at this depth; the upper end adds the largest growth the unseen
    // tail could contribute while the reciprocal sum stays below 1.
    std::pair<Rat, Rat> zeros_limit_interval() const;
    std::pair<Rat, Rat> ones_limit_interval() const;

    // Materialized words ('0','1','x'); throws BudgetError beyond the cap.
    const std::string& W(int n) const;
    const std::string& zeros(int n) const;
    const std::string& ones(int n) const;
    bool materializable(int n) const;

    // Symbol of Z_n / O_n at index i without materializing.
    char zeros_symbol(int n, std::uint64_t i) const;
    char ones_symbol(int n, std::uint64_t i) const;

    // The nested-word limit point: zeros(0), ones(1), zeros(2), ... share
    // prefixes, and y extends them all.
    Symbol y_symbol(std::uint64_t i) const;
    Point y_point() const;

    // Language of the generated subshift: length-len factors harvested from
    // the four level-n concatenations. Requires len <= l_n.
    std::set<Word> language(std::uint64_t len, int n_level) const;

    // Suffix cascade: Z_0^{j_0} ... Z_k^{j_k} is a suffix of Z_{k+1} whenever
    // each j_i <= s_{i+1} - 2.
    bool zeros_cascade_is_suffix(const std::vector<std::uint64_t>& js) const;

    ShiftSpace space_view(int n_level) const;

private:
    std::vector<std::uint64_t> s_; // 1-based with dummy at 0
    int depth_ = 0;
    std::uint64_t word_cap_ = 0;
    std::vector<Int> len_, c_zeros_, c_ones_;
    std::vector<std::string> w_, z_, o_; // materialized up to cap ("" beyond)
    std::vector<bool> have_words_;
};

struct OxtobyStageSweep {
    std::size_t stage = 0;          // block index i (stage i writes Z_{2i+1}^{j_i})
    std::uint64_t start = 0, end = 0;
    Rat max_freq{0};                // max m(w) over prefixes ending in this stage
    std::uint64_t argmax = 0;
    std::optional<Rat> bound;       // 3/j_{i-1} + m(Z_depth), defined for i >= 1
    bool bound_holds = true;
};

struct OxtobyCheckpoint {
    std::size_t stage = 0;   // i: prefix ends right after the O_{2i+1} window
    std::uint64_t position = 0;
    Rat actual_freq{0};          // exact m(w) of the prefix
    Rat window_lower_bound{0};   // (j_i m(Z_{2i+1}) + m(O_{2i+1})) / (j_i + 1 + 1/s_{2i+1})
};

struct OxtobyReduceResult {
    std::vector<std::uint64_t> j; // clamped exponents, one per beta entry
    std::uint64_t total_length = 0;
    std::string prefix;           // materialized up to the prefix cap
    std::vector<OxtobyStageSweep> stages;
    std::vector<OxtobyCheckpoint> checkpoints;
    std::vector<std::pair<std::uint64_t, Rat>> boundary_series; // m(w) at block ends
};

// The reduction word Z_1^{j_0} Z_3^{j_1} ... with j_i = min(beta(i)+1,
// s_{2i+2}-2), swept with exact running frequencies. Stage i >= 1 prefixes
// are checked against 3/j_{i-1} + m(Z_depth); when the continuation block is
// available each stage's O-window statistic is recorded.
OxtobyReduceResult oxtoby_reduce(const OxtobyMachine& machine,
                                 const std::vector<std::int64_t>& beta,
                                 std::uint64_t sweep_cap = 80'000'000,
                                 std::uint64_t prefix_cap = 4'000'000);

} // namespace genericlab
