#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "genericlab/measure.hpp"
#include "genericlab/rational.hpp"

namespace genericlab {

// Witness flow between supports; entries sit only on pairs with rho < eps for
// every eps inside the winning threshold interval.
struct Coupling {
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> flow; // (mu idx, nu idx, mass)
    Rat total{0};
    Rat edge_threshold{0}; // edges used have distance <= this value
};

struct ProhorovResult {
    Rat value;     // the infimum, exact
    bool attained; // whether feas(value) itself holds (eps = value admissible)
    Coupling witness;
};

// Exact Prohorov distance between finitely supported measures, computed by
// max-flow feasibility across the threshold intervals cut out by the sorted
// pairwise distances.
ProhorovResult prohorov_full(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             std::uint64_t horizon);
Rat prohorov(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::uint64_t horizon);

struct OracleResult {
    Rat value;
    bool attained;
};

// Definitional referee: evaluates "mu(A) <= nu(A^eps) + eps for all A" by
// enumerating subsets of supp(mu). Requires |supp(mu)| <= 12. Shares no flow
// machinery with prohorov().
OracleResult prohorov_bruteforce_oracle_full(const DiscreteMeasure& mu,
                                             const DiscreteMeasure& nu,
                                             std::uint64_t horizon);
Rat prohorov_bruteforce_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               std::uint64_t horizon);

} // namespace genericlab
