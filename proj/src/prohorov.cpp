#include "genericlab/prohorov.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "genericlab/errors.hpp"

namespace genericlab {

namespace {

std::vector<std::vector<Rat>> distance_matrix(const DiscreteMeasure& mu,
                                              const DiscreteMeasure& nu,
                                              std::uint64_t horizon) {
    // Precompute prefixes once; rho is a common-prefix scan.
    std::vector<Word> a, b;
    a.reserve(mu.size());
    b.reserve(nu.size());
    for (const Point& p : mu.support) a.push_back(p.prefix(horizon));
    for (const Point& p : nu.support) b.push_back(p.prefix(horizon));
    std::vector<std::vector<Rat>> d(mu.size(), std::vector<Rat>(nu.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t k = 0;
            while (k < horizon && a[i][k] == b[j][k]) ++k;
            d[i][j] = (k == horizon) ? Rat(0) : pow2(-static_cast<long>(k));
        }
    }
    return d;
}

// Max flow over the bipartite network source -> mu_i -> nu_j -> sink with
// source/sink capacities given by the weights and unbounded admissible edges.
// Edges arrive in threshold order; flow state persists across thresholds.
class BipartiteFlow {
public:
    BipartiteFlow(const std::vector<Rat>& mu_w, const std::vector<Rat>& nu_w)
        : mu_rem_(mu_w), nu_rem_(nu_w), m_(mu_w.size()), n_(nu_w.size()),
          adj_(mu_w.size()), radj_(nu_w.size()),
          flow_(mu_w.size(), std::vector<Rat>(nu_w.size(), Rat(0))) {}

    void add_edge(std::size_t i, std::size_t j) {
        adj_[i].push_back(j);
        radj_[j].push_back(i);
        edge_dirty_ = true;
    }

    // Greedy saturation then BFS augmenting paths until maximal.
    const Rat& max_flow() {
        if (!edge_dirty_) return total_;
        for (std::size_t i = 0; i < m_; ++i) {
            if (mu_rem_[i] == 0) continue;
            for (std::size_t j : adj_[i]) {
                if (nu_rem_[j] == 0) continue;
                Rat push = std::min(mu_rem_[i], nu_rem_[j]);
                if (push == 0) continue;
                flow_[i][j] += push;
                mu_rem_[i] -= push;
                nu_rem_[j] -= push;
                total_ += push;
                if (mu_rem_[i] == 0) break;
            }
        }
        while (augment_once()) {}
        edge_dirty_ = false;
        return total_;
    }

    const std::vector<std::vector<Rat>>& flow() const { return flow_; }
    Rat total() const { return total_; }

private:
    bool augment_once() {
        // BFS from all mu nodes with residual source capacity.
        constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> pred_mu(n_, kNone);  // nu j reached from mu i
        std::vector<std::size_t> pred_nu(m_, kNone);  // mu i reached from nu j
        std::vector<char> mu_seen(m_, 0), nu_seen(n_, 0);
        std::deque<std::pair<char, std::size_t>> queue; // (0=mu,1=nu, idx)
        for (std::size_t i = 0; i < m_; ++i) {
            if (mu_rem_[i] > 0) {
                mu_seen[i] = 1;
                queue.emplace_back(0, i);
            }
        }
        std::size_t hit = kNone;
        while (!queue.empty() && hit == kNone) {
            auto [side, v] = queue.front();
            queue.pop_front();
            if (side == 0) {
                for (std::size_t j : adj_[v]) {
                    if (nu_seen[j]) continue;
                    nu_seen[j] = 1;
                    pred_mu[j] = v;
                    if (nu_rem_[j] > 0) {
                        hit = j;
                        break;
                    }
                    queue.emplace_back(1, j);
                }
            } else {
                for (std::size_t i : radj_[v]) {
                    if (mu_seen[i] || flow_[i][v] == 0) continue;
                    mu_seen[i] = 1;
                    pred_nu[i] = v;
                    queue.emplace_back(0, i);
                }
            }
        }
        if (hit == kNone) return false;

        // Trace back the alternating path and find the bottleneck.
        std::vector<std::pair<std::size_t, std::size_t>> fwd, bwd;
        std::size_t j = hit;
        Rat bottleneck = nu_rem_[j];
        for (;;) {
            std::size_t i = pred_mu[j];
            fwd.emplace_back(i, j);
            if (pred_nu[i] == kNone || mu_rem_[i] > 0) {
                bottleneck = std::min(bottleneck, mu_rem_[i]);
                break;
            }
            std::size_t jprev = pred_nu[i];
            bwd.emplace_back(i, jprev);
            bottleneck = std::min(bottleneck, flow_[i][jprev]);
            j = jprev;
        }
        const std::size_t source_i = fwd.back().first;
        mu_rem_[source_i] -= bottleneck;
        nu_rem_[hit] -= bottleneck;
        for (auto& [i, jj] : fwd) flow_[i][jj] += bottleneck;
        for (auto& [i, jj] : bwd) flow_[i][jj] -= bottleneck;
        total_ += bottleneck;
        return true;
    }

    std::vector<Rat> mu_rem_, nu_rem_;
    std::size_t m_, n_;
    std::vector<std::vector<std::size_t>> adj_, radj_;
    std::vector<std::vector<Rat>> flow_;
    Rat total_{0};
    bool edge_dirty_ = true;
};

struct Thresholds {
    std::vector<Rat> values;                                            // ascending, starts at 0
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> new_edges; // pairs at values[k]
};

Thresholds bucket_by_distance(const std::vector<std::vector<Rat>>& d) {
    std::map<Rat, std::vector<std::pair<std::size_t, std::size_t>>> buckets;
    buckets[Rat(0)]; // interval base even when no pair sits at distance zero
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d[i].size(); ++j) buckets[d[i][j]].emplace_back(i, j);
    Thresholds out;
    for (auto& [v, edges] : buckets) {
        out.values.push_back(v);
        out.new_edges.push_back(std::move(edges));
    }
    return out;
}

} // namespace

ProhorovResult prohorov_full(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             std::uint64_t horizon) {
    mu.validate();
    nu.validate();
    const auto d = distance_matrix(mu, nu, horizon);
    const Thresholds th = bucket_by_distance(d);

    BipartiteFlow flow(mu.weights, nu.weights);
    const std::size_t K = th.values.size();
    std::vector<Rat> deficiency(K);
    for (std::size_t k = 0; k < K; ++k) {
        for (auto& [i, j] : th.new_edges[k]) flow.add_edge(i, j);
        deficiency[k] = Rat(1) - flow.max_flow();
    }

    // Interval (values[k], values[k+1]] carries constant deficiency[k]; the
    // last interval is unbounded. Infimum per interval:
    //   def <= lo            -> lo (not attained inside the interval)
    //   lo < def <= hi       -> def (attained)
    //   otherwise            -> infeasible
    Rat best;
    bool have = false;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < K; ++k) {
        const Rat& lo = th.values[k];
        const bool unbounded = (k + 1 == K);
        Rat candidate;
        if (deficiency[k] <= lo) {
            candidate = lo;
        } else if (unbounded || deficiency[k] <= th.values[k + 1]) {
            candidate = deficiency[k];
        } else {
            continue;
        }
        if (!have || candidate < best) {
            best = candidate;
            best_k = k;
            have = true;
        }
    }
    if (!have) throw PreconditionError("prohorov: no feasible threshold (weights not both 1?)");

    // Attainment: feas(best) uses edges with distance strictly below best.
    bool attained = false;
    if (best > 0) {
        std::size_t k_strict = K; // largest k with values[k] < best
        for (std::size_t k = 0; k < K; ++k)
            if (th.values[k] < best) k_strict = k;
        attained = (k_strict != K) && (deficiency[k_strict] <= best);
    }

    ProhorovResult out;
    out.value = best;
    out.attained = attained;
    out.witness.edge_threshold = th.values[best_k];
    // Rebuild the witness flow at the winning interval's edge set.
    BipartiteFlow wit(mu.weights, nu.weights);
    for (std::size_t k = 0; k <= best_k; ++k)
        for (auto& [i, j] : th.new_edges[k]) wit.add_edge(i, j);
    wit.max_flow();
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < nu.size(); ++j)
            if (wit.flow()[i][j] != 0) out.witness.flow.emplace_back(i, j, wit.flow()[i][j]);
    out.witness.total = wit.total();
    return out;
}

Rat prohorov(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::uint64_t horizon) {
    return prohorov_full(mu, nu, horizon).value;
}

OracleResult prohorov_bruteforce_oracle_full(const DiscreteMeasure& mu,
                                             const DiscreteMeasure& nu,
                                             std::uint64_t horizon) {
    mu.validate();
    nu.validate();
    if (mu.size() > 12)
        throw PreconditionError("oracle requires |supp(mu)| <= 12, got " +
                                std::to_string(mu.size()));
    const std::size_t m = mu.size();
    const std::size_t n = nu.size();
    const auto d = distance_matrix(mu, nu, horizon);

    std::vector<Rat> levels;
    levels.push_back(Rat(0));
    for (const auto& row : d)
        for (const Rat& v : row) levels.push_back(v);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    const std::size_t words = (n + 63) / 64;
    const std::uint32_t nmask = static_cast<std::uint32_t>(1u << m);

    // For eps in (levels[k], levels[k+1]], A^eps collects nu atoms at distance
    // <= levels[k] from A. def_k = max_A mu(A) - nu(A^eps).
    auto deficiency_at = [&](std::size_t k) {
        std::vector<std::vector<std::uint64_t>> nb(m, std::vector<std::uint64_t>(words, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][j] <= levels[k]) nb[i][j / 64] |= (1ULL << (j % 64));
        Rat best(0);
        std::vector<std::uint64_t> acc(words);
        for (std::uint32_t mask = 1; mask < nmask; ++mask) {
            std::fill(acc.begin(), acc.end(), 0);
            Rat mu_mass(0);
            for (std::size_t i = 0; i < m; ++i) {
                if (!(mask >> i & 1u)) continue;
                mu_mass += mu.weights[i];
                for (std::size_t w = 0; w < words; ++w) acc[w] |= nb[i][w];
            }
            Rat nu_mass(0);
            for (std::size_t j = 0; j < n; ++j)
                if (acc[j / 64] >> (j % 64) & 1ULL) nu_mass += nu.weights[j];
            Rat def = mu_mass - nu_mass;
            if (def > best) best = def;
        }
        return best;
    };

    std::vector<Rat> defs(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) defs[k] = deficiency_at(k);

    Rat best;
    bool have = false;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const Rat& lo = levels[k];
        const bool unbounded = (k + 1 == levels.size());
        Rat candidate;
        if (defs[k] <= lo) candidate = lo;
        else if (unbounded || defs[k] <= levels[k + 1]) candidate = defs[k];
        else continue;
        if (!have || candidate < best) {
            best = candidate;
            have = true;
        }
    }
    if (!have) throw PreconditionError("oracle: no feasible threshold");

    bool attained = false;
    if (best > 0) {
        std::size_t k_strict = levels.size();
        for (std::size_t k = 0; k < levels.size(); ++k)
            if (levels[k] < best) k_strict = k;
        attained = (k_strict != levels.size()) && (defs[k_strict] <= best);
    }
    return OracleResult{best, attained};
}

Rat prohorov_bruteforce_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               std::uint64_t horizon) {
    return prohorov_bruteforce_oracle_full(mu, nu, horizon).value;
}

} // namespace genericlab
