#pragma once

#include <random>
#include <vector>

#include "genericlab/measure.hpp"
#include "genericlab/point.hpp"
#include "genericlab/rational.hpp"
#include "genericlab/tracing.hpp"

namespace genericlab::testsupport {

// Seeded generator with rejection-free modular draws; all suites default to
// seed 0 so reruns are byte-identical.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng() % n; }
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { // inclusive
        return lo + below(hi - lo + 1);
    }
    bool coin() { return (eng() & 1) != 0; }
};

inline Word random_word(Rng& rng, std::size_t len, Symbol alphabet) {
    std::vector<Symbol> syms;
    syms.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
        syms.push_back(static_cast<Symbol>(rng.below(alphabet)));
    return Word(std::move(syms));
}

inline Point random_point(Rng& rng, Symbol alphabet = 3, std::size_t max_pre = 3,
                          std::size_t max_per = 4) {
    const std::size_t pre_len = rng.below(max_pre + 1);
    const std::size_t per_len = rng.between(1, max_per);
    return Point::eventually_periodic(random_word(rng, pre_len, alphabet),
                                      random_word(rng, per_len, alphabet));
}

// Random finitely supported measure with small rational weights.
inline DiscreteMeasure random_measure(Rng& rng, std::size_t max_support, std::uint64_t horizon,
                                      Symbol alphabet = 3) {
    const std::size_t k = rng.between(1, max_support);
    std::vector<std::pair<Point, Rat>> atoms;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> parts;
    for (std::size_t i = 0; i < k; ++i) {
        parts.push_back(rng.between(1, 6));
        total += parts.back();
    }
    for (std::size_t i = 0; i < k; ++i) {
        Rat w(static_cast<unsigned long>(parts[i]), static_cast<unsigned long>(total));
        w.canonicalize();
        atoms.emplace_back(random_point(rng, alphabet), w);
    }
    return make_measure(std::move(atoms), horizon);
}

// Random combination of periodic orbit measures with weights p_i/Q; the sum
// of the primary periods stays small so oracle cross-checks remain cheap.
inline DiscreteMeasure random_orbit_combination(Rng& rng, std::uint64_t horizon) {
    const std::size_t k = rng.between(1, 3);
    std::vector<Point> zs;
    std::vector<Word> periods;
    std::size_t period_budget = 6;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t p = rng.between(1, std::min<std::size_t>(3, period_budget));
        period_budget -= p;
        periods.push_back(random_word(rng, p, 3));
        zs.push_back(Point::periodic(periods.back()));
        if (period_budget == 0) break;
    }
    std::vector<std::uint64_t> parts;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        parts.push_back(rng.between(1, 4));
        total += parts.back();
    }
    std::vector<Rat> coeffs;
    std::vector<DiscreteMeasure> orbits;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        Rat c(static_cast<unsigned long>(parts[i]), static_cast<unsigned long>(total));
        c.canonicalize();
        coeffs.push_back(c);
        orbits.push_back(orbit_measure(zs[i], horizon));
    }
    return convex_combine(coeffs, orbits, horizon);
}

struct MatchedListsInstance {
    std::vector<Point> xbar, ybar;
    std::vector<std::pair<std::size_t, std::size_t>> matching;
    Rat gamma, delta, eps;
};

// Instance satisfying the matched-subsequence hypotheses: y-entries matched
// to x-entries agree to a depth putting them strictly inside eps.
inline MatchedListsInstance random_matched_lists(Rng& rng, std::uint64_t horizon) {
    MatchedListsInstance inst;
    const std::size_t k = rng.between(2, 7);
    const std::uint64_t gden = 8;
    const std::uint64_t gnum = rng.below(3); // gamma in {0, 1/8, 2/8}
    inst.gamma = Rat(static_cast<unsigned long>(gnum), gden);
    inst.gamma.canonicalize();
    const std::uint64_t dnum = rng.below(3);
    inst.delta = Rat(static_cast<unsigned long>(dnum), gden);
    inst.delta.canonicalize();
    const long ebits = static_cast<long>(rng.between(1, 3));
    inst.eps = pow2(-ebits); // 1/2 .. 1/8

    for (std::size_t i = 0; i < k; ++i) inst.xbar.push_back(random_point(rng));

    // l <= (1+delta) k and l >= k
    const std::uint64_t extra_cap = (dnum * k) / gden;
    const std::size_t l = k + rng.below(extra_cap + 1);
    // j >= (1-gamma) k, i.e. drop at most floor(gamma k)
    const std::uint64_t drop_cap = (gnum * k) / gden;
    const std::size_t j = k - rng.below(drop_cap + 1);

    // choose strictly increasing index sets of size j
    auto pick_indices = [&](std::size_t n, std::size_t count) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        for (std::size_t i = 0; i < n; ++i) std::swap(all[i], all[rng.below(n)]);
        all.resize(count);
        std::sort(all.begin(), all.end());
        return all;
    };
    auto ai = pick_indices(k, j);
    auto bi = pick_indices(l, j);

    inst.ybar.assign(l, Point());
    for (std::size_t t = 0; t < j; ++t) {
        // agree with the partner to depth ebits+1+jitter, then diverge
        const std::uint64_t depth = static_cast<std::uint64_t>(ebits) + 1 + rng.below(3);
        Word head = inst.xbar[ai[t]].prefix(depth);
        Word tail = random_word(rng, rng.between(1, 3), 3);
        inst.ybar[bi[t]] = Point::eventually_periodic(head, tail);
        inst.matching.emplace_back(ai[t], bi[t]);
    }
    for (std::size_t t = 0; t < l; ++t)
        if (!inst.ybar[t].valid()) inst.ybar[t] = random_point(rng);
    (void)horizon;
    return inst;
}

} // namespace genericlab::testsupport
