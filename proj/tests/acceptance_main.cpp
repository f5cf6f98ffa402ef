// Acceptance suite: one pass/fail line per criterion, exact arithmetic
// throughout. Exits nonzero when any criterion fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "genericlab/cli.hpp"
#include "genericlab/json_io.hpp"
#include "genericlab/oxtoby.hpp"
#include "genericlab/psi_reduction.hpp"
#include "genericlab/tracing.hpp"
#include "genericlab/tree_reduction.hpp"
#include "support/generators.hpp"

using namespace genericlab;
using testsupport::Rng;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string title;
    double time_cap_s;
    bool pass = false;
    double elapsed_s = 0;
    std::string detail;
};

bool measures_equal_at_horizon(const DiscreteMeasure& a, const DiscreteMeasure& b,
                               std::uint64_t h) {
    std::map<Word, Rat> wa, wb;
    for (std::size_t i = 0; i < a.size(); ++i) wa[a.support[i].prefix(h)] += a.weights[i];
    for (std::size_t i = 0; i < b.size(); ++i) wb[b.support[i].prefix(h)] += b.weights[i];
    return wa == wb;
}

// ---------------------------------------------------------------- criterion 1
void crit_oracle_equivalence(Criterion& c) {
    const std::uint64_t h = 16;
    Rng rng(1);
    int agree = 0;
    const int total = 500;
    for (int it = 0; it < total; ++it) {
        auto mu = testsupport::random_measure(rng, 8, h);
        auto nu = testsupport::random_measure(rng, 8, h);
        auto flow = prohorov_full(mu, nu, h);
        auto oracle = prohorov_bruteforce_oracle_full(mu, nu, h);
        if (flow.value == oracle.value && flow.attained == oracle.attained) ++agree;
    }
    c.pass = (agree == total);
    c.detail = std::to_string(agree) + "/" + std::to_string(total) + " exact matches";
}

// ---------------------------------------------------------------- criterion 2
void crit_metric_axioms(Criterion& c) {
    const std::uint64_t h = 16;
    Rng rng(2);
    int ok = 0;
    const int total = 200;
    for (int it = 0; it < total; ++it) {
        auto mu = testsupport::random_measure(rng, 6, h);
        auto nu = testsupport::random_measure(rng, 6, h);
        auto lam = testsupport::random_measure(rng, 6, h);
        const Rat ab = prohorov(mu, nu, h);
        const Rat ba = prohorov(nu, mu, h);
        const Rat ac = prohorov(mu, lam, h);
        const Rat cb = prohorov(lam, nu, h);
        bool good = (ab == ba) && (ab <= ac + cb) && prohorov(mu, mu, h) == 0;
        good = good && ((ab == 0) == measures_equal_at_horizon(mu, nu, h));
        if (good) ++ok;
    }
    c.pass = (ok == total);
    c.detail = std::to_string(ok) + "/" + std::to_string(total) +
               " triples: symmetry, identity, triangle";
}

// ---------------------------------------------------------------- criterion 3
void crit_close_segments(Criterion& c) {
    const std::uint64_t h = 16;
    Rng rng(3);
    int ok = 0;
    const int total = 200;
    for (int it = 0; it < total; ++it) {
        auto inst = testsupport::random_matched_lists(rng, h);
        auto res = close_segments_bound_check(inst.xbar, inst.ybar, inst.matching, inst.gamma,
                                              inst.delta, inst.eps, h);
        if (res.precondition_ok && res.holds) ++ok;
    }
    c.pass = (ok == total);
    c.detail = std::to_string(ok) + "/" + std::to_string(total) +
               " instances satisfy D <= 2*gamma + delta + eps";
}

// ---------------------------------------------------------------- criterion 4
void crit_generic_build(Criterion& c) {
    const std::uint64_t h = 64;
    auto mu = make_measure({{Point::constant(0), make_rat(1, 3)},
                            {Point::constant(1), make_rat(2, 3)}},
                           h);
    const Rat eps = make_rat(1, 8);
    auto res = build_generic_point({mu}, eps, 5, h);
    bool all = true;
    std::ostringstream detail;
    for (const auto& cert : res.certificate) {
        // re-verify independently of the builder's recorded values
        auto emp = emp_measure(res.y, cert.L, h);
        const Rat direct = prohorov(emp, mu, h);
        const Rat referee = prohorov_bruteforce_oracle(mu, emp, h);
        const Rat bound = Rat(1, static_cast<unsigned long>(cert.n)) +
                          Rat(7) * eps * pow2(-(cert.n + 1));
        const bool row = (direct == referee) && (direct <= bound) && cert.pass;
        all = all && row;
        detail << (cert.n > 1 ? " " : "") << "n=" << cert.n << ":" << rat_decimal(direct, 3)
               << "<=" << rat_decimal(bound, 3);
    }
    c.pass = all;
    c.detail = detail.str();
}

// ---------------------------------------------------------------- criterion 5
void crit_protogeneric(Criterion& c) {
    const std::uint64_t h = 64;
    Rng rng(5);
    int ok = 0, total = 0;
    for (int it = 0; it < 20; ++it) {
        auto mu = testsupport::random_orbit_combination(rng, h);
        for (long ebits : {2L, 3L}) {
            const Rat eps = pow2(-ebits);
            for (std::uint64_t n : {1ULL, 2ULL, 3ULL}) {
                ++total;
                auto res = protogeneric(mu, eps, n, h);
                const Rat checked = prohorov(mu, emp_measure(res.x, n * res.Q, h), h);
                if (checked < eps && res.achieved == checked) ++ok;
            }
        }
    }
    c.pass = (ok == total);
    c.detail = std::to_string(ok) + "/" + std::to_string(total) +
               " certificates strictly below eps";
}

// ---------------------------------------------------------------- criterion 6
void crit_dichotomy(Criterion& c) {
    const std::uint64_t h = 64;
    const Rat eps = make_rat(1, 8);
    PsiReductionConfig cfg;
    cfg.nu = dirac(Point::constant(1), h);
    cfg.mu_targets = {dirac(Point::constant(0), h)};
    cfg.eps = eps;
    cfg.stages = 5;
    cfg.horizon = h;

    std::ostringstream detail;
    bool ok = true;

    // (a) diverging entries: terminal distance to the base target within
    //     1/9 + the stage bound
    {
        PsiSchedule sched;
        sched.breakpoints = {1, 2, 3, 4, 5};
        sched.mode = PsiSchedule::Mode::Direct;
        auto res = psi_reduction({8, 9, 10, 11, 12}, sched, cfg);
        const auto& last = res.checkpoints.back();
        const Rat cap = make_rat(1, 9) + last.stage_bound;
        ok = ok && (last.dist_to_base_target <= cap);
        detail << "terminal=" << rat_decimal(last.dist_to_base_target, 3)
               << "<=" << rat_decimal(cap, 3);
    }

    // (b) constant entries: blend tracked at the pinned breakpoints plus a
    //     quarter-amplitude swing between late consecutive breakpoints
    {
        PsiSchedule sched;
        sched.breakpoints = {1, 2, 3, 4, 5};
        sched.mode = PsiSchedule::Mode::Alternating;
        auto phi = LocalObservable::cylinder_indicator(Word::from_digits("1"));
        auto res = phi_reduction({1, 1, 1}, sched, cfg, phi);
        auto blend = convex_combine(
            std::vector<Rat>{make_rat(1, 2), make_rat(1, 2)},
            std::vector<DiscreteMeasure>{cfg.nu, cfg.mu_targets[0]}, h);
        for (std::size_t k = 0; k < res.reduction.checkpoints.size(); k += 2) {
            const auto& row = res.reduction.checkpoints[k];
            auto emp = emp_measure(res.reduction.build.y, row.L, h);
            ok = ok && (prohorov(emp, blend, h) <= row.stage_bound);
        }
        const auto& swings = res.breakpoint_swings;
        Rat quarter = make_rat(1, 4);
        bool osc = swings.size() >= 4 && swings[2] >= quarter && swings[3] >= quarter;
        ok = ok && osc;
        detail << " swings=";
        for (const auto& s : swings) detail << rat_decimal(s, 3) << " ";
    }
    c.pass = ok;
    c.detail = detail.str();
}

// ---------------------------------------------------------------- criterion 7
void crit_oxtoby_identities(Criterion& c) {
    bool ok = true;
    std::ostringstream detail;

    auto m = OxtobyMachine::build({4, 8, 16, 32, 64}, 5);
    for (int n = 1; n <= 5; ++n)
        ok = ok && (m.m_ones(n) - m.m_zeros(n) == m.gap_product(n));
    detail << "gap identity n<=5";

    std::uint64_t cascades = 0;
    std::vector<std::uint64_t> js;
    std::function<bool(std::size_t)> rec = [&](std::size_t k) {
        for (std::uint64_t j = 0; j + 2 <= m.s_at(static_cast<int>(k + 1)); ++j) {
            js.push_back(j);
            ++cascades;
            if (!m.zeros_cascade_is_suffix(js)) { js.pop_back(); return false; }
            if (k + 1 < 4 && !rec(k + 1)) { js.pop_back(); return false; }
            js.pop_back();
        }
        return true;
    };
    ok = ok && rec(0);
    detail << ", " << cascades << " suffix cascades";

    for (int n = 1; n <= 3; ++n) {
        const std::uint64_t ln = m.length(n).get_ui();
        const std::size_t count = m.language(ln, n).size();
        ok = ok && (count <= 4 * ln + 4);
    }
    detail << ", factor bound n<=3";

    auto small = OxtobyMachine::build({3, 4}, 2);
    ok = ok && (small.W(1) == "0xx") && (small.W(2) == "0110xx0xx0xx");
    detail << ", staged words byte-match";
    c.pass = ok;
    c.detail = detail.str();
}

// ---------------------------------------------------------------- criterion 8
void crit_oxtoby_reduction(Criterion& c) {
    auto m = OxtobyMachine::build({4, 8, 16, 32, 64, 128}, 6);
    bool ok = true;
    std::ostringstream detail;

    const Rat margin = m.gap_product(6) / 4;
    const Rat a = m.m_zeros(6);
    {
        auto res = oxtoby_reduce(m, {0, 0});
        ok = ok && res.checkpoints.size() == 2;
        for (const auto& chk : res.checkpoints) {
            ok = ok && (chk.actual_freq >= chk.window_lower_bound);
            ok = ok && (chk.window_lower_bound - a >= margin);
            ok = ok && (chk.actual_freq - a >= margin);
        }
        detail << "constant-entry checkpoints clear the margin " << rat_decimal(margin, 3);
    }
    {
        auto res = oxtoby_reduce(m, {0, 1, 2});
        for (const auto& sw : res.stages) {
            if (sw.stage < 2) continue;
            ok = ok && sw.bound.has_value() && sw.bound_holds;
            ok = ok && (sw.max_freq <= *sw.bound);
        }
        detail << "; diverging-entry stage sweep bounded";
    }
    c.pass = ok;
    c.detail = detail.str();
}

// ---------------------------------------------------------------- criterion 9
void crit_tree_construction(Criterion& c) {
    const std::uint64_t h = 64;
    bool ok = true;
    std::ostringstream detail;

    Rat prev(2);
    std::vector<std::vector<Symbol>> chain{{0}, {0, 0}, {0, 0, 0}};
    detail << "orbit distances";
    for (const auto& s : chain) {
        Word w = node_periodic_word(s);
        Rat d = prohorov(emp_measure(Point::periodic(w), w.size(), h), node_measure(s, h), h);
        ok = ok && (d < prev);
        prev = d;
        detail << " " << rat_decimal(d, 3);
    }

    auto enumeration = NodeEnumeration::standard(3, 2);
    Rng rng(9);
    int pairs_ok = 0;
    for (int it = 0; it < 10; ++it) {
        const std::size_t agree_n = rng.between(1, 3);
        std::vector<std::vector<Symbol>> a_nodes{{}}, b_nodes{{}};
        for (std::size_t i = 2; i <= enumeration.count(); ++i) {
            const auto& node = enumeration.at(i);
            if (node.size() != 1) continue;
            const bool shared = rng.coin();
            if (i <= agree_n) {
                if (shared) { a_nodes.push_back(node); b_nodes.push_back(node); }
            } else {
                if (shared) a_nodes.push_back(node);
                if (rng.coin()) b_nodes.push_back(node);
            }
        }
        auto ra = tree_point(TreeOnOmega::from_nodes(a_nodes),
                             static_cast<int>(2 * agree_n), enumeration);
        auto rb = tree_point(TreeOnOmega::from_nodes(b_nodes),
                             static_cast<int>(2 * agree_n), enumeration);
        const std::uint64_t upto = ra.stages.back().end;
        bool same = (rb.stages.back().end == upto);
        for (std::uint64_t i = 0; same && i < upto; ++i)
            same = (ra.x.at(i) == rb.x.at(i));
        if (same) ++pairs_ok;
    }
    ok = ok && (pairs_ok == 10);
    detail << "; " << pairs_ok << "/10 prefix-continuity pairs";
    c.pass = ok;
    c.detail = detail.str();
}

// --------------------------------------------------------------- criterion 10
void crit_tracing(Criterion& c) {
    Rng rng(10);
    int exact_ok = 0, adversarial_ok = 0;
    for (int it = 0; it < 20; ++it) {
        Specification xi;
        const std::size_t k = rng.between(2, 4);
        for (std::size_t i = 0; i < k; ++i)
            xi.segments.emplace_back(testsupport::random_point(rng), rng.between(24, 40));
        Point y = trace_full_shift(xi);
        bool good = true;
        for (long e = 0; e <= 2; ++e) {
            auto rep = verify_trace(y, xi, pow2(-e), Rat(0), Rat(0));
            good = good && rep.verdict;
            if (rep.verdict)
                for (auto g : rep.gaps) good = good && (g == 0);
        }
        if (good) ++exact_ok;

        // mutate segment 2 beyond a 1/10 error budget
        const std::uint64_t n1 = xi.segments[0].second;
        const std::uint64_t n2 = xi.segments[1].second;
        const std::uint64_t budget = n2 / 10;
        std::vector<Symbol> buf = y.prefix(xi.total_length()).symbols();
        for (std::uint64_t mpos = 0; mpos <= budget; ++mpos) {
            const std::uint64_t pos = n1 + (mpos * n2) / (budget + 1);
            buf[pos] = static_cast<Symbol>((buf[pos] + 1) % 3);
        }
        Point mutated =
            Point::eventually_periodic(Word(buf), xi.segments.back().first.prefix(4));
        if (!verify_trace(mutated, xi, Rat(1), make_rat(1, 10), Rat(0)).verdict)
            ++adversarial_ok;
    }
    c.pass = (exact_ok == 20) && (adversarial_ok == 20);
    c.detail = std::to_string(exact_ok) + "/20 exact traces, " +
               std::to_string(adversarial_ok) + "/20 adversarial rejections";
}

// --------------------------------------------------------------- criterion 11
void crit_determinism(Criterion& c) {
    const fs::path dir = fs::temp_directory_path() / "genericlab_acceptance";
    fs::create_directories(dir);
    auto file = [&](const std::string& n) { return (dir / n).string(); };
    auto put = [&](const std::string& n, const std::string& text) {
        std::ofstream out(file(n), std::ios::binary);
        out << text;
    };
    auto slurp = [&](const std::string& n) {
        std::ifstream in(file(n), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    put("d0.json", R"({"support":[{"kind":"ep","pre":[],"per":[0]}],"weights":["1"]})");
    put("d1.json", R"({"support":[{"kind":"ep","pre":[],"per":[1]}],"weights":["1"]})");
    put("mix.json",
        R"({"support":[{"kind":"ep","pre":[],"per":[0]},{"kind":"ep","pre":[],"per":[1]}],"weights":["1/3","2/3"]})");
    put("measures.json", "[" + slurp("mix.json") + "]");
    put("point.json", R"({"kind":"recipe","name":"alternating_blocks","params":{"growth":4}})");
    put("targets.json", "[" + slurp("d0.json") + "," + slurp("d1.json") + "]");
    put("tree.json", R"([[],[0],[1]])");
    put("phi.json", R"({"window":1,"table":{"1":"1"},"default":"0"})");

    auto run_once = [&](const std::string& tag) {
        std::vector<std::string> outputs;
        auto cli = [&](std::vector<std::string> args, bool keep_stdout = true) {
            std::ostringstream out, err;
            run_cli(args, out, err);
            if (keep_stdout) outputs.push_back(out.str());
        };
        cli({"prohorov", file("mix.json"), file("d0.json")});
        cli({"emp-series", "--point", file("point.json"), "--targets", file("targets.json"),
             "--checkpoints", "10,42,170"});
        cli({"generic-build", "--measures", file("measures.json"), "--eps", "1/4", "--stages",
             "3", "--cert-out", file(tag + "_cert.csv")},
            false);
        outputs.push_back(slurp(tag + "_cert.csv"));
        cli({"oxtoby", "--s", "4,8,16,32", "--depth", "4", "stats"});
        cli({"oxtoby", "--s", "4,8,16,32", "--depth", "4", "reduce", "--beta", "0,1"});
        cli({"tree-point", file("tree.json"), "--stages", "4"});
        cli({"phi-reduce", "--beta", "1,1", "--breakpoints", "1,2,3", "--nu", file("d1.json"),
             "--mu", file("d0.json"), "--phi", file("phi.json"), "--eps", "1/4", "--stages", "3",
             "--series-out", file(tag + "_series.csv")});
        outputs.push_back(slurp(tag + "_series.csv"));
        return outputs;
    };
    auto first = run_once("a");
    auto second = run_once("b");
    bool ok = first.size() == second.size();
    std::size_t nonempty = 0;
    for (std::size_t i = 0; ok && i < first.size(); ++i) {
        ok = (first[i] == second[i]);
        if (!first[i].empty()) ++nonempty;
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    c.pass = ok && nonempty == first.size();
    c.detail = std::to_string(first.size()) + " artifacts byte-identical across reruns";
}

} // namespace

int main() {
    register_core_recipes();
    std::vector<Criterion> criteria = {
        {1, "flow distance equals the subset oracle on 500 seeded pairs", 60},
        {2, "metric axioms exact on 200 seeded triples", 30},
        {3, "matched-subsequence bound on 200 seeded instances", 60},
        {4, "five-stage build certificates within 1/n + 7*eps/2^(n+1)", 120},
        {5, "periodic-support certificates below eps for n in {1,2,3}", 60},
        {6, "schedule dichotomy: terminal closeness vs quarter swings", 120},
        {7, "staged-word identities, suffix cascades, factor bound", 120},
        {8, "reduction sweep: margins above and bounds below", 180},
        {9, "orbit-measure convergence and tree-prefix continuity", 120},
        {10, "exact traces accepted, budget violations rejected", 30},
        {11, "byte-identical artifacts on rerun", 120},
    };

    void (*runners[])(Criterion&) = {
        crit_oracle_equivalence, crit_metric_axioms,   crit_close_segments,
        crit_generic_build,      crit_protogeneric,    crit_dichotomy,
        crit_oxtoby_identities,  crit_oxtoby_reduction, crit_tree_construction,
        crit_tracing,            crit_determinism,
    };

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto& c = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        try {
            runners[i](c);
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = std::string("exception: ") + e.what();
        }
        c.elapsed_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.elapsed_s > c.time_cap_s) {
            c.pass = false;
            c.detail += " [over time cap]";
        }
        all = all && c.pass;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(1);
        line << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << " [" << c.elapsed_s
             << "s/" << c.time_cap_s << "s] " << c.title;
        if (!c.detail.empty()) line << " -- " << c.detail;
        std::cout << line.str() << "\n";
    }
    std::cout << (all ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES PRESENT")
              << "\n";
    return all ? 0 : 1;
}
