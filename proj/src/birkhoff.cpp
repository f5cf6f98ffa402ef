#include "genericlab/birkhoff.hpp"

#include <algorithm>

#include "genericlab/errors.hpp"
#include "genericlab/prohorov.hpp"

namespace genericlab {

LocalObservable LocalObservable::cylinder_indicator(const Word& w) {
    if (w.empty()) throw PreconditionError("cylinder indicator needs a nonempty word");
    LocalObservable phi;
    phi.window = static_cast<int>(w.size());
    phi.table[w] = Rat(1);
    phi.default_value = Rat(0);
    return phi;
}

LocalObservable LocalObservable::constant(const Rat& c) {
    LocalObservable phi;
    phi.window = 1;
    phi.default_value = c;
    return phi;
}

Rat LocalObservable::eval_window(const Word& w) const {
    if (static_cast<int>(w.size()) < window)
        throw PreconditionError("observable window longer than supplied word");
    Word key = (static_cast<int>(w.size()) == window) ? w : w.sub(0, window);
    auto it = table.find(key);
    return it == table.end() ? default_value : it->second;
}

Rat LocalObservable::bound() const {
    Rat b = abs(default_value);
    for (const auto& [w, v] : table) b = std::max(b, Rat(abs(v)));
    return b;
}

Rat birkhoff_average(const LocalObservable& phi, const Point& x, std::uint64_t k) {
    if (k < 1) throw PreconditionError("birkhoff average needs k >= 1");
    const std::uint64_t need = k - 1 + phi.window;
    Word buf = x.prefix(need);
    Rat sum(0);
    for (std::uint64_t j = 0; j < k; ++j)
        sum += phi.eval_window(buf.sub(j, phi.window));
    Rat denom(static_cast<unsigned long>(k));
    return sum / denom;
}

Rat birkhoff_average_via_emp(const LocalObservable& phi, const Point& x, std::uint64_t k,
                             std::uint64_t horizon) {
    if (horizon < static_cast<std::uint64_t>(phi.window))
        throw PreconditionError("integration horizon must cover the observable window");
    return integrate(phi, emp_measure(x, k, horizon));
}

Rat integrate(const LocalObservable& phi, const DiscreteMeasure& mu) {
    Rat sum(0);
    for (std::size_t i = 0; i < mu.size(); ++i)
        sum += mu.weights[i] * phi.eval(mu.support[i]);
    return sum;
}

namespace {

// Running averages A_1..A_K computed in one pass over the prefix.
std::vector<Rat> running_averages(const LocalObservable& phi, const Point& x, std::uint64_t K) {
    const std::uint64_t need = K - 1 + phi.window;
    Word buf = x.prefix(need);
    std::vector<Rat> out;
    out.reserve(K);
    Rat sum(0);
    for (std::uint64_t j = 0; j < K; ++j) {
        sum += phi.eval_window(buf.sub(j, phi.window));
        out.push_back(sum / Rat(static_cast<unsigned long>(j + 1)));
    }
    return out;
}

} // namespace

AverageSeries average_series(const LocalObservable& phi, const Point& x,
                             const std::vector<std::uint64_t>& ks) {
    AverageSeries s;
    if (ks.empty()) return s;
    for (std::size_t i = 1; i < ks.size(); ++i)
        if (ks[i] <= ks[i - 1]) throw PreconditionError("series checkpoints must increase");
    for (std::uint64_t k : ks) s.values.emplace_back(k, birkhoff_average(phi, x, k));
    s.window_lo = ks.front();
    s.window_hi = ks.back();
    s.liminf_est = s.values.front().second;
    s.limsup_est = s.values.front().second;
    for (auto& [k, v] : s.values) {
        s.liminf_est = std::min(s.liminf_est, v);
        s.limsup_est = std::max(s.limsup_est, v);
    }
    return s;
}

RegularityReport regularity_report(const LocalObservable& phi, const Point& x,
                                   std::uint64_t K, const Rat& tau, const Rat& eta) {
    if (K < 10) throw PreconditionError("regularity horizon must be >= 10");
    if (!(tau > 0 && tau < 1)) throw PreconditionError("tau must lie in (0,1)");
    if (!(eta > 0)) throw PreconditionError("eta must be positive");

    const std::uint64_t lo = std::max<std::uint64_t>(1, rat_ceil_u64(tau * Rat(static_cast<unsigned long>(K))));
    auto avgs = running_averages(phi, x, K);

    RegularityReport rep;
    rep.tail.window_lo = lo;
    rep.tail.window_hi = K;
    std::uint64_t argmax = lo, argmin = lo;
    Rat vmax = avgs[lo - 1], vmin = avgs[lo - 1];
    for (std::uint64_t k = lo; k <= K; ++k) {
        const Rat& v = avgs[k - 1];
        rep.tail.values.emplace_back(k, v);
        if (v > vmax) { vmax = v; argmax = k; }
        if (v < vmin) { vmin = v; argmin = k; }
    }
    rep.tail.liminf_est = vmin;
    rep.tail.limsup_est = vmax;
    rep.spread = vmax - vmin;

    if (rep.spread < eta) {
        rep.verdict = RegularityVerdict::Regular;
        rep.alpha = (vmax + vmin) / 2;
        return rep;
    }
    if (rep.spread > 2 * eta) {
        bool down_after_max = false, up_after_min = false;
        for (std::uint64_t k = argmax; k <= K; ++k)
            if (avgs[k - 1] < vmax - eta) { down_after_max = true; break; }
        for (std::uint64_t k = argmin; k <= K; ++k)
            if (avgs[k - 1] > vmin + eta) { up_after_min = true; break; }
        if (down_after_max && up_after_min) {
            rep.verdict = RegularityVerdict::Irregular;
            rep.gap = rep.spread;
            return rep;
        }
    }
    rep.verdict = RegularityVerdict::Undecided;
    rep.alpha = (vmax + vmin) / 2;
    return rep;
}

VsetDiagnostics vset_diagnostics(const Point& x, const std::vector<DiscreteMeasure>& targets,
                                 const std::vector<std::uint64_t>& checkpoints,
                                 std::uint64_t horizon) {
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw PreconditionError("checkpoints must be strictly increasing");
    VsetDiagnostics out;
    out.min_distance_per_target.assign(targets.size(), Rat(2));
    std::vector<DiscreteMeasure> emps;
    emps.reserve(checkpoints.size());
    for (std::uint64_t n : checkpoints) emps.push_back(emp_measure(x, n, horizon));
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        for (std::size_t t = 0; t < targets.size(); ++t) {
            Rat dist = prohorov(emps[c], targets[t], horizon);
            out.rows.push_back({checkpoints[c], t, dist});
            out.min_distance_per_target[t] = std::min(out.min_distance_per_target[t], dist);
        }
    }
    for (std::size_t c = 0; c + 1 < checkpoints.size(); ++c)
        out.cauchy.emplace_back(checkpoints[c], checkpoints[c + 1],
                                prohorov(emps[c], emps[c + 1], horizon));
    return out;
}

} // namespace genericlab
