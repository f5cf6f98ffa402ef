#include "genericlab/tracing.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "genericlab/errors.hpp"

namespace genericlab {

Rat bowen_distance(const Point& x, const Point& y, const std::vector<std::uint64_t>& lambda,
                   std::uint64_t horizon) {
    if (lambda.empty()) throw PreconditionError("bowen distance needs a nonempty index set");
    Rat best(0);
    for (std::uint64_t j : lambda) best = std::max(best, rho(x.shift(j), y.shift(j), horizon));
    return best;
}

bool bowen_ball_member(const Point& y, const Point& x, const std::vector<std::uint64_t>& lambda,
                       const Rat& eps, std::uint64_t horizon) {
    return bowen_distance(x, y, lambda, horizon) < eps;
}

Point trace_full_shift(const Specification& xi, const ShiftSpace& space) {
    xi.validate();
    if (!space.is_full_shift())
        throw PreconditionError("trace construction is specialized to full shifts");
    std::vector<std::pair<Word, std::uint64_t>> blocks;
    blocks.reserve(xi.segments.size());
    for (const auto& [p, n] : xi.segments) {
        Word w = p.prefix(n);
        for (Symbol s : w.symbols())
            if (!space.symbol_ok(s))
                throw PreconditionError("segment symbol outside the declared alphabet");
        blocks.emplace_back(std::move(w), 1);
    }
    Word tail = blocks.back().first;
    return Point::wrap(std::make_shared<BlockPoint>(std::move(blocks), std::move(tail)));
}

namespace {

// Largest integer e >= 0 with 2^-e >= eps; -1 when even 2^0 < eps.
long eps_depth(const Rat& eps) {
    if (eps > 1) return -1;
    long e = 0;
    while (pow2(-(e + 1)) >= eps) ++e;
    return e;
}

// Error count for one segment placed at `offset`: index t is an error when
// some disagreement occurs within 2^-eps reach inside the remaining window.
std::uint64_t segment_errors(const Point& y, std::uint64_t offset, const Word& seg, long edepth,
                             std::vector<std::uint64_t>* lambda_out) {
    const std::uint64_t n = seg.size();
    std::vector<std::uint64_t> next_dis(n + 1, n); // first disagreement >= t
    for (std::uint64_t t = n; t-- > 0;) {
        next_dis[t] = (y.at(offset + t) != seg[t]) ? t : next_dis[t + 1];
    }
    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < n; ++t) {
        const bool bad = edepth >= 0 && next_dis[t] < n &&
                         next_dis[t] - t <= static_cast<std::uint64_t>(edepth);
        if (bad) ++errors;
        else if (lambda_out) lambda_out->push_back(t);
    }
    return errors;
}

struct GapSearch {
    const Point& y;
    const std::vector<Word>& segs;
    std::vector<std::uint64_t> budgets;  // allowed errors per segment
    std::vector<std::uint64_t> gap_caps; // allowed gap before segment j (j >= 1)
    long edepth;
    std::vector<std::uint64_t> gaps;
    std::uint64_t evals = 0;
    static constexpr std::uint64_t kEvalCap = 5'000'000;

    bool dfs(std::size_t j, std::uint64_t offset) {
        if (j == segs.size()) return true;
        const std::uint64_t cap = (j == 0) ? 0 : gap_caps[j];
        for (std::uint64_t s = 0; s <= cap; ++s) {
            if (++evals > kEvalCap) throw BudgetError("gap search budget exceeded");
            const std::uint64_t off = offset + s;
            const std::uint64_t err = segment_errors(y, off, segs[j], edepth, nullptr);
            if (err <= budgets[j]) {
                if (j > 0) gaps[j - 1] = s;
                if (dfs(j + 1, off + segs[j].size())) return true;
            }
        }
        return false;
    }
};

} // namespace

TraceReport verify_trace(const Point& y, const Specification& xi, const Rat& eps,
                         const Rat& delta1, const Rat& delta2) {
    xi.validate();
    if (!(eps > 0)) throw PreconditionError("verify_trace needs eps > 0");
    if (delta1 < 0 || delta2 < 0) throw PreconditionError("verify_trace deltas must be >= 0");

    const long edepth = eps_depth(eps);
    std::vector<Word> segs;
    segs.reserve(xi.segments.size());
    for (const auto& [p, n] : xi.segments) segs.push_back(p.prefix(n));

    GapSearch search{y, segs, {}, {}, edepth, {}, 0};
    search.budgets.resize(segs.size());
    search.gap_caps.resize(segs.size());
    search.gaps.assign(segs.size() == 0 ? 0 : segs.size() - 1, 0);
    for (std::size_t j = 0; j < segs.size(); ++j) {
        const Rat nj(static_cast<unsigned long>(segs[j].size()));
        if (j == 0) {
            search.budgets[j] = 0; // first segment is traced with no errors
            search.gap_caps[j] = 0;
        } else {
            Rat b = delta1 * nj;
            Rat g = delta2 * nj;
            search.budgets[j] = mpz_class(b.get_num() / b.get_den()).get_ui();
            search.gap_caps[j] = mpz_class(g.get_num() / g.get_den()).get_ui();
        }
    }

    TraceReport report;
    if (!search.dfs(0, 0)) {
        report.verdict = false;
        report.note = "no witness within the allowed gaps and error budgets";
        return report;
    }

    report.verdict = true;
    report.gaps = search.gaps;
    std::uint64_t offset = 0;
    for (std::size_t j = 0; j < segs.size(); ++j) {
        if (j > 0) offset += search.gaps[j - 1];
        TraceSegmentReport seg;
        seg.length = segs[j].size();
        seg.gap_before = (j == 0) ? 0 : search.gaps[j - 1];
        seg.errors = segment_errors(y, offset, segs[j], edepth, &seg.lambda);
        seg.lambda_size = seg.lambda.size();
        report.segments.push_back(std::move(seg));
        offset += segs[j].size();
    }
    report.total_length = offset;
    return report;
}

CloseSegmentsCheck close_segments_bound_check(
    const std::vector<Point>& xbar, const std::vector<Point>& ybar,
    const std::vector<std::pair<std::size_t, std::size_t>>& matching, const Rat& gamma,
    const Rat& delta, const Rat& eps, std::uint64_t horizon) {
    CloseSegmentsCheck out;
    auto fail = [&](const std::string& msg) {
        out.precondition_ok = false;
        out.precondition_msg = msg;
        return out;
    };
    const std::size_t k = xbar.size();
    const std::size_t l = ybar.size();
    const std::size_t j = matching.size();
    if (k == 0) return fail("xbar must be nonempty");
    if (l < k) return fail("need |ybar| >= |xbar|");
    if (Rat(static_cast<unsigned long>(l)) > (Rat(1) + delta) * Rat(static_cast<unsigned long>(k)))
        return fail("need |ybar| <= (1+delta)|xbar|");
    if (j > k) return fail("matching longer than xbar");
    if (Rat(static_cast<unsigned long>(j)) < (Rat(1) - gamma) * Rat(static_cast<unsigned long>(k)))
        return fail("need |matching| >= (1-gamma)|xbar|");
    for (std::size_t i = 0; i < j; ++i) {
        if (matching[i].first >= k || matching[i].second >= l)
            return fail("matching index out of range");
        if (i > 0 && (matching[i].first <= matching[i - 1].first ||
                      matching[i].second <= matching[i - 1].second))
            return fail("matching indices must be strictly increasing");
        if (rho(xbar[matching[i].first], ybar[matching[i].second], horizon) >= eps)
            return fail("matched pair at distance >= eps");
    }

    out.lhs = prohorov(emp_of_points(xbar, horizon), emp_of_points(ybar, horizon), horizon);
    out.rhs = 2 * gamma + delta + eps;
    out.holds = out.lhs <= out.rhs;
    return out;
}

namespace {

struct OrbitPart {
    Point z;
    Word period; // primary period word
    Rat q;
};

std::vector<OrbitPart> decompose_into_orbits(const DiscreteMeasure& mu) {
    std::vector<Rat> remaining = mu.weights;
    std::map<Word, std::size_t> by_prefix;
    for (std::size_t i = 0; i < mu.size(); ++i)
        by_prefix[mu.support[i].prefix(mu.horizon)] = i;

    std::vector<OrbitPart> parts;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (remaining[i] == 0) continue;
        auto per = mu.support[i].periodic_form();
        if (!per)
            throw PreconditionError("measure support must consist of periodic points");
        Word primary(std::vector<Symbol>(per->symbols().begin(),
                                         per->symbols().begin() + primary_period(*per)));
        DiscreteMeasure orbit = orbit_measure(mu.support[i], mu.horizon);
        // coefficient forced by this point's remaining mass
        Rat own;
        bool found = false;
        for (std::size_t a = 0; a < orbit.size(); ++a) {
            if (orbit.support[a].prefix(mu.horizon) == mu.support[i].prefix(mu.horizon)) {
                own = orbit.weights[a];
                found = true;
                break;
            }
        }
        if (!found) throw PreconditionError("orbit decomposition lost its base point");
        Rat q = remaining[i] / own;
        for (std::size_t a = 0; a < orbit.size(); ++a) {
            auto it = by_prefix.find(orbit.support[a].prefix(mu.horizon));
            if (it == by_prefix.end())
                throw PreconditionError("measure is not a combination of orbit measures "
                                        "(missing orbit point in support)");
            remaining[it->second] -= q * orbit.weights[a];
            if (remaining[it->second] < 0)
                throw PreconditionError("measure is not a combination of orbit measures "
                                        "(weights inconsistent along an orbit)");
        }
        parts.push_back(OrbitPart{mu.support[i], std::move(primary), q});
    }
    for (const Rat& r : remaining)
        if (r != 0) throw PreconditionError("orbit decomposition left residual mass");
    return parts;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    return a / std::gcd(a, b) * b;
}

} // namespace

ProtogenericResult protogeneric(const DiscreteMeasure& mu, const Rat& eps, std::uint64_t n,
                                std::uint64_t horizon) {
    mu.validate();
    if (!(eps > 0)) throw PreconditionError("protogeneric needs eps > 0");
    if (n < 1) throw PreconditionError("protogeneric needs n >= 1");
    if (horizon < 1) throw PreconditionError("protogeneric needs horizon >= 1");

    auto parts = decompose_into_orbits(mu);

    // Weight denominators give Q; p_i = q_i * Q.
    Int qlcm = 1;
    for (const auto& part : parts) mpz_lcm(qlcm.get_mpz_t(), qlcm.get_mpz_t(), part.q.get_den().get_mpz_t());
    if (!qlcm.fits_ulong_p()) throw PreconditionError("weight denominators too large");
    const std::uint64_t Qw = qlcm.get_ui();
    std::vector<std::uint64_t> p(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Rat pi = parts[i].q * Rat(static_cast<unsigned long>(Qw));
        p[i] = static_cast<std::uint64_t>(mpz_class(pi.get_num()).get_ui());
        if (p[i] == 0) throw PreconditionError("zero orbit multiplicity");
    }

    std::uint64_t base = 1;
    for (const auto& part : parts) base = lcm_u64(base, part.period.size());

    // Initial margin sized so boundary windows stay under eps; the exact
    // certificate below is authoritative and K doubles until it closes.
    const long e = eps_depth(eps) + 1; // smallest e with 2^-e < eps
    Rat needed = Rat(static_cast<unsigned long>(parts.size())) *
                 Rat(static_cast<unsigned long>(e + 2)) * pow2(e + 1) /
                 Rat(static_cast<unsigned long>(Qw));
    std::uint64_t K = base * std::max<std::uint64_t>(1, rat_ceil_u64(needed / Rat(static_cast<unsigned long>(base))));

    ProtogenericResult out;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 24) throw BudgetError("protogeneric failed to certify within the size budget");
        if (Qw * K > 64'000'000ULL) throw BudgetError("protogeneric round length exceeds cap");

        Word round;
        Specification spec;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const std::uint64_t reps = p[i] * K / parts[i].period.size();
            round.append(concat_power(parts[i].period, reps));
            spec.segments.emplace_back(parts[i].z, p[i] * K);
        }
        Point x = Point::periodic(round);
        Rat achieved = prohorov(mu, emp_measure(x, n * Qw * K, horizon), horizon);
        if (achieved < eps) {
            out.x = x;
            out.Q = Qw * K;
            out.K = K;
            out.achieved = achieved;
            out.round_spec = std::move(spec);
            return out;
        }
        K *= 2;
    }
}

GenericBuildResult build_generic_point(const std::vector<DiscreteMeasure>& mus, const Rat& eps,
                                       int stages, std::uint64_t horizon,
                                       std::uint64_t length_cap) {
    if (mus.empty()) throw PreconditionError("generic build needs at least one measure");
    if (!(eps > 0 && eps < 1)) throw PreconditionError("generic build needs eps in (0,1)");
    if (stages < 1) throw PreconditionError("generic build needs stages >= 1");
    auto mu_at = [&](int n) -> const DiscreteMeasure& {
        return mus[std::min<std::size_t>(n - 1, mus.size() - 1)];
    };

    // Anchors for stages 1..S+1 (the last one only constrains ell_S).
    std::vector<ProtogenericResult> anchors(stages + 2);
    for (int n = 1; n <= stages + 1; ++n)
        anchors[n] = protogeneric(mu_at(n), eps * pow2(-(n + 1)), 1, horizon);

    GenericBuildResult out;
    out.state.stages = stages;
    out.state.eps = eps;
    out.state.horizon = horizon;
    out.state.K.assign(stages + 2, 0);
    out.state.ell.assign(stages + 1, 0);
    out.state.L.assign(stages + 1, 0);
    for (int n = 1; n <= stages + 1; ++n) out.state.K[n] = anchors[n].Q;
    for (int n = 1; n <= stages; ++n) out.state.anchors.push_back(anchors[n].x);

    std::vector<std::pair<Word, std::uint64_t>> blocks;
    const Rat hmass(static_cast<unsigned long>(horizon > 0 ? horizon - 1 : 0));
    out.state.L[0] = out.state.K[1];

    for (int n = 1; n <= stages; ++n) {
        const std::uint64_t Kn = out.state.K[n];
        const std::uint64_t Lprev = out.state.L[n - 1];
        // boundary-window floors keep every certificate term within its bound
        Rat floor_shift = hmass * pow2(n) / eps;
        Rat floor_trace = Rat(static_cast<unsigned long>(n)) * hmass * pow2(n - 1) / eps;
        Rat lfloor = std::max(floor_shift, floor_trace);
        std::uint64_t ell = 1;
        auto bump = [&](const Rat& target) {
            Rat need = (target - Rat(static_cast<unsigned long>(Lprev))) /
                       Rat(static_cast<unsigned long>(Kn));
            ell = std::max(ell, rat_ceil_u64(need));
        };
        // ell*K >= (n+1)K_{n+1} and ell*K >= n*L_{n-1}
        ell = std::max(ell, rat_ceil_u64(Rat(static_cast<unsigned long>(n + 1)) *
                                         Rat(static_cast<unsigned long>(out.state.K[n + 1])) /
                                         Rat(static_cast<unsigned long>(Kn))));
        ell = std::max(ell, rat_ceil_u64(Rat(static_cast<unsigned long>(n)) *
                                         Rat(static_cast<unsigned long>(Lprev)) /
                                         Rat(static_cast<unsigned long>(Kn))));
        bump(lfloor);
        out.state.ell[n] = ell;
        out.state.L[n] = Lprev + ell * Kn;
        if (out.state.L[n] > length_cap)
            throw BudgetError("generic build stage " + std::to_string(n) +
                              " would exceed the length cap");

        // Stage 1 starts from y_0 = x_1, so its round covers L_0 as well.
        Word round = anchors[n].x.periodic_form().value();
        blocks.emplace_back(std::move(round), (n == 1) ? ell + 1 : ell);
    }

    Word tail = blocks.back().first;
    out.y = Point::wrap(std::make_shared<BlockPoint>(blocks, tail));

    // Certificates, all via exact prohorov calls on the final point.
    std::vector<DiscreteMeasure> emp_stage; // Emp(y_n, L_n) with y_n ending in stage n's round
    emp_stage.reserve(stages + 1);
    {
        // y_0 = x_1 observed for L_0 iterates
        emp_stage.push_back(emp_measure(anchors[1].x, out.state.L[0], horizon));
    }
    for (int n = 1; n <= stages; ++n) {
        std::vector<std::pair<Word, std::uint64_t>> head(blocks.begin(), blocks.begin() + n);
        Point yn = Point::wrap(std::make_shared<BlockPoint>(head, blocks[n - 1].first));
        emp_stage.push_back(emp_measure(yn, out.state.L[n], horizon));
    }

    for (int n = 1; n <= stages; ++n) {
        StageCertificate cert;
        cert.n = n;
        cert.K = out.state.K[n];
        cert.ell = out.state.ell[n];
        cert.L = out.state.L[n];
        cert.bound = Rat(1, static_cast<unsigned long>(n)) + Rat(7) * eps * pow2(-(n + 1));
        cert.bound.canonicalize();

        DiscreteMeasure emp_y = emp_measure(out.y, out.state.L[n], horizon);
        cert.achieved = prohorov(emp_y, mu_at(n), horizon);
        cert.pass = cert.achieved <= cert.bound;

        DiscreteMeasure emp_anchor = emp_measure(anchors[n].x, out.state.K[n], horizon);
        Rat wprev(static_cast<unsigned long>(out.state.L[n - 1]),
                  static_cast<unsigned long>(out.state.L[n]));
        wprev.canonicalize();
        std::vector<Rat> cs{wprev, Rat(1) - wprev};
        std::vector<DiscreteMeasure> ms{emp_stage[n - 1], emp_anchor};
        DiscreteMeasure emp_xi = convex_combine(cs, ms, horizon);

        cert.term_limit_shift = prohorov(emp_y, emp_stage[n], horizon);
        cert.term_trace = prohorov(emp_stage[n], emp_xi, horizon);
        cert.term_drop_head = prohorov(emp_xi, emp_anchor, horizon);
        cert.term_anchor = prohorov(emp_anchor, mu_at(n), horizon);
        cert.terms_pass = cert.term_limit_shift <= eps * pow2(-n) &&
                          cert.term_trace <= Rat(4) * eps * pow2(-(n + 1)) &&
                          cert.term_drop_head <= Rat(1, static_cast<unsigned long>(n)) &&
                          cert.term_anchor <= eps * pow2(-(n + 1));
        out.certificate.push_back(std::move(cert));
    }
    return out;
}

} // namespace genericlab
