#include "genericlab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "genericlab/errors.hpp"
#include "genericlab/json_io.hpp"

namespace genericlab {

namespace {

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoull(tok));
    }
    if (out.empty()) throw ParseError("empty integer list: '" + text + "'");
    return out;
}

std::vector<std::int64_t> parse_i64_list(const std::string& text) {
    std::vector<std::int64_t> out;
    for (std::uint64_t v : parse_u64_list(text)) out.push_back(static_cast<std::int64_t>(v));
    return out;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) out << text;
    else write_text_file(path, text);
}

// Optional persistence of machine dumps under GENERICLAB_CACHE_DIR.
void maybe_cache_machine(const OxtobyMachine& m) {
    const char* dir = std::getenv("GENERICLAB_CACHE_DIR");
    if (!dir || !*dir) return;
    std::string key = "oxtoby";
    for (std::uint64_t v : m.s_list()) key += "_" + std::to_string(v);
    key += "_d" + std::to_string(m.depth()) + ".json";
    const std::filesystem::path path = std::filesystem::path(dir) / key;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (std::filesystem::exists(path)) return;
    write_text_file(path.string(), oxtoby_machine_to_json(m).dump(2) + "\n");
}

struct CliOptions {
    std::uint64_t horizon = 64;
};

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace {

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    register_core_recipes();

    CLI::App app{"genericlab: exact finite-scale experiments on shift spaces"};
    app.require_subcommand(1);
    CliOptions opt;
    app.add_option("--horizon", opt.horizon, "truncation horizon for point comparisons")
        ->capture_default_str();

    // prohorov A.json B.json
    std::string pro_a, pro_b;
    bool pro_oracle = false;
    auto* pro = app.add_subcommand("prohorov", "exact distance between two measure files");
    pro->add_option("a", pro_a)->required();
    pro->add_option("b", pro_b)->required();
    pro->add_flag("--oracle", pro_oracle, "use the subset-enumeration referee");

    // emp-series
    std::string emp_point, emp_targets, emp_checkpoints, emp_out;
    auto* emp = app.add_subcommand("emp-series", "empirical-measure distance table");
    emp->add_option("--point", emp_point)->required();
    emp->add_option("--targets", emp_targets)->required();
    emp->add_option("--checkpoints", emp_checkpoints)->required();
    emp->add_option("--out", emp_out);

    // trace
    std::string trace_spec, trace_point, trace_eps = "1/4", trace_d1 = "0", trace_d2 = "0",
                trace_out;
    auto* tra = app.add_subcommand("trace", "verify approximate tracing of a specification");
    tra->add_option("spec", trace_spec)->required();
    tra->add_option("--point", trace_point, "point to check (default: exact concatenation)");
    tra->add_option("--eps", trace_eps);
    tra->add_option("--d1", trace_d1);
    tra->add_option("--d2", trace_d2);
    tra->add_option("--out", trace_out);

    // generic-build
    std::string gb_measures, gb_eps = "1/8", gb_cert_out, gb_prefix_out;
    int gb_stages = 4;
    std::uint64_t gb_cap = 80'000'000;
    auto* gb = app.add_subcommand("generic-build", "stagewise generic-point construction");
    gb->add_option("--measures", gb_measures, "JSON array of measures")->required();
    gb->add_option("--eps", gb_eps);
    gb->add_option("--stages", gb_stages);
    gb->add_option("--cap", gb_cap);
    gb->add_option("--cert-out", gb_cert_out);
    gb->add_option("--prefix-out", gb_prefix_out);

    // psi-reduce / phi-reduce
    std::string psi_beta, psi_bps, psi_nu, psi_eps = "1/8", psi_out, psi_mode = "direct";
    std::vector<std::string> psi_mu;
    int psi_stages = 4;
    auto* psi = app.add_subcommand("psi-reduce", "blended-target generic build diagnostics");
    psi->add_option("--beta", psi_beta)->required();
    psi->add_option("--breakpoints", psi_bps)->required();
    psi->add_option("--nu", psi_nu)->required();
    psi->add_option("--mu", psi_mu)->required();
    psi->add_option("--eps", psi_eps);
    psi->add_option("--stages", psi_stages);
    psi->add_option("--mode", psi_mode, "direct or alternating");
    psi->add_option("--out", psi_out);

    std::string phi_beta, phi_bps, phi_nu, phi_phi, phi_eps = "1/8", phi_out, phi_series_out;
    std::vector<std::string> phi_mu;
    int phi_stages = 4;
    auto* phr = app.add_subcommand("phi-reduce", "alternating build observed through phi");
    phr->add_option("--beta", phi_beta)->required();
    phr->add_option("--breakpoints", phi_bps)->required();
    phr->add_option("--nu", phi_nu)->required();
    phr->add_option("--mu", phi_mu)->required();
    phr->add_option("--phi", phi_phi)->required();
    phr->add_option("--eps", phi_eps);
    phr->add_option("--stages", phi_stages);
    phr->add_option("--out", phi_out);
    phr->add_option("--series-out", phi_series_out);

    // tree-point
    std::string tp_tree, tp_out, tp_prefix_out;
    int tp_stages = 6;
    int tp_max_entry = 8, tp_max_len = 4;
    std::uint64_t tp_emp_cap = 2'000'000;
    auto* tp = app.add_subcommand("tree-point", "code a finite tree into a point");
    tp->add_option("tree", tp_tree)->required();
    tp->add_option("--stages", tp_stages);
    tp->add_option("--max-entry", tp_max_entry);
    tp->add_option("--max-len", tp_max_len);
    tp->add_option("--emp-cap", tp_emp_cap, "largest checkpoint for the distance series");
    tp->add_option("--out", tp_out);
    tp->add_option("--prefix-out", tp_prefix_out);

    // oxtoby verbs
    auto* ox = app.add_subcommand("oxtoby", "staged-word machine");
    ox->require_subcommand(1);
    std::string ox_s = "4,8,16,32,64";
    int ox_depth = 5;
    ox->add_option("--s", ox_s, "parameter list");
    ox->add_option("--depth", ox_depth);

    auto* ox_words = ox->add_subcommand("words", "print the staged words");
    std::string ox_stats_out;
    auto* ox_stats = ox->add_subcommand("stats", "frequency table");
    ox_stats->add_option("--out", ox_stats_out);
    std::uint64_t ox_lang_len = 1;
    int ox_lang_level = 0;
    auto* ox_lang = ox->add_subcommand("language", "enumerate factors of the given length");
    ox_lang->add_option("--length", ox_lang_len)->required();
    ox_lang->add_option("--level", ox_lang_level)->required();
    std::string ox_beta, ox_reduce_out;
    auto* ox_red = ox->add_subcommand("reduce", "frequency sweep of the reduction word");
    ox_red->add_option("--beta", ox_beta)->required();
    ox_red->add_option("--out", ox_reduce_out);

    std::vector<std::string> argv = args;
    std::vector<const char*> cargs;
    cargs.push_back("genericlab");
    for (const auto& a : argv) cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.get_name() << ": " << e.what() << "\n";
        return 2;
    }

    if (pro->parsed()) {
        DiscreteMeasure a = measure_from_json(load_json_file(pro_a), opt.horizon);
        DiscreteMeasure b = measure_from_json(load_json_file(pro_b), opt.horizon);
        Rat d = pro_oracle ? prohorov_bruteforce_oracle(a, b, opt.horizon)
                           : prohorov(a, b, opt.horizon);
        out << rat_str(d) << " (" << rat_decimal(d) << ")\n";
        return 0;
    }

    if (emp->parsed()) {
        Point x = point_from_json(load_json_file(emp_point));
        std::vector<DiscreteMeasure> targets;
        for (const auto& t : load_json_file(emp_targets))
            targets.push_back(measure_from_json(t, opt.horizon));
        auto checkpoints = parse_u64_list(emp_checkpoints);
        auto diag = vset_diagnostics(x, targets, checkpoints, opt.horizon);
        emit(emp_out, vset_csv(diag), out);
        return 0;
    }

    if (tra->parsed()) {
        Specification xi = specification_from_json(load_json_file(trace_spec));
        Point y = trace_point.empty() ? trace_full_shift(xi)
                                      : point_from_json(load_json_file(trace_point));
        TraceReport rep = verify_trace(y, xi, parse_rat(trace_eps), parse_rat(trace_d1),
                                       parse_rat(trace_d2));
        emit(trace_out, trace_report_to_json(rep).dump(2) + "\n", out);
        return rep.verdict ? 0 : 0; // a false verdict is an answer, not a failure
    }

    if (gb->parsed()) {
        std::vector<DiscreteMeasure> mus;
        for (const auto& m : load_json_file(gb_measures))
            mus.push_back(measure_from_json(m, opt.horizon));
        auto result = build_generic_point(mus, parse_rat(gb_eps), gb_stages, opt.horizon, gb_cap);
        emit(gb_cert_out, certificate_csv(result.certificate), out);
        if (!gb_prefix_out.empty()) {
            std::ostringstream os;
            Word prefix = result.y.prefix(result.state.L[gb_stages]);
            for (std::size_t i = 0; i < prefix.size(); ++i)
                os << (i ? " " : "") << prefix[i];
            os << "\n";
            write_text_file(gb_prefix_out, os.str());
        }
        return 0;
    }

    auto run_psi = [&](const std::string& beta_text, const std::string& bps_text,
                       const std::string& nu_path, const std::vector<std::string>& mu_paths,
                       const std::string& eps_text, int stages, PsiSchedule::Mode mode) {
        PsiSchedule schedule;
        schedule.breakpoints = parse_u64_list(bps_text);
        schedule.mode = mode;
        PsiReductionConfig cfg;
        cfg.nu = measure_from_json(load_json_file(nu_path), opt.horizon);
        for (const auto& p : mu_paths)
            cfg.mu_targets.push_back(measure_from_json(load_json_file(p), opt.horizon));
        cfg.eps = parse_rat(eps_text);
        cfg.stages = stages;
        cfg.horizon = opt.horizon;
        return std::make_pair(schedule, cfg);
    };

    if (psi->parsed()) {
        PsiSchedule::Mode mode = PsiSchedule::Mode::Direct;
        if (psi_mode == "alternating") mode = PsiSchedule::Mode::Alternating;
        else if (psi_mode != "direct") throw ParseError("mode must be direct or alternating");
        auto [schedule, cfg] = run_psi(psi_beta, psi_bps, psi_nu, psi_mu, psi_eps, psi_stages, mode);
        auto result = psi_reduction(parse_i64_list(psi_beta), schedule, cfg);
        emit(psi_out, psi_checkpoints_csv(result), out);
        return 0;
    }

    if (phr->parsed()) {
        auto [schedule, cfg] = run_psi(phi_beta, phi_bps, phi_nu, phi_mu, phi_eps, phi_stages,
                                       PsiSchedule::Mode::Alternating);
        LocalObservable phi = observable_from_json(load_json_file(phi_phi));
        auto result = phi_reduction(parse_i64_list(phi_beta), schedule, cfg, phi);
        emit(phi_out, psi_checkpoints_csv(result.reduction), out);
        if (!phi_series_out.empty())
            write_text_file(phi_series_out,
                            series_csv(result.stage_averages, "L", "average"));
        return 0;
    }

    if (tp->parsed()) {
        TreeOnOmega tree = tree_from_json(load_json_file(tp_tree));
        NodeEnumeration enumeration =
            NodeEnumeration::standard(static_cast<Symbol>(tp_max_entry), tp_max_len);
        auto result = tree_point(tree, tp_stages, enumeration);
        std::ostringstream os;
        os << "stage,a,b,length,end,node_block,dist_to_zero_point,dist_decimal\n";
        DiscreteMeasure zero_target = dirac(Point::constant(0), opt.horizon);
        for (const auto& st : result.stages) {
            os << st.n << "," << st.a << "," << st.b << "," << st.length << "," << st.end << ","
               << (st.node_block ? "true" : "false") << ",";
            if (st.end <= tp_emp_cap) {
                Rat d = prohorov(emp_measure(result.x, st.end, opt.horizon), zero_target,
                                 opt.horizon);
                os << rat_str(d) << "," << rat_decimal(d);
            } else {
                os << ",";
            }
            os << "\n";
        }
        emit(tp_out, os.str(), out);
        if (!tp_prefix_out.empty()) {
            std::ostringstream ps;
            const std::uint64_t n = std::min<std::uint64_t>(result.total_length, tp_emp_cap);
            Word prefix = result.x.prefix(n);
            for (std::size_t i = 0; i < prefix.size(); ++i)
                ps << (i ? " " : "") << prefix[i];
            ps << "\n";
            write_text_file(tp_prefix_out, ps.str());
        }
        return 0;
    }

    if (ox->parsed()) {
        auto s = parse_u64_list(ox_s);
        OxtobyMachine machine = OxtobyMachine::build(s, ox_depth);
        maybe_cache_machine(machine);
        if (ox_words->parsed()) {
            for (int n = 0; n <= machine.depth(); ++n) {
                if (!machine.materializable(n)) {
                    out << "W_" << n << " = (beyond materialization cap)\n";
                    continue;
                }
                out << "W_" << n << " = " << machine.W(n) << "\n";
            }
            return 0;
        }
        if (ox_stats->parsed()) {
            emit(ox_stats_out, oxtoby_stats_csv(machine), out);
            return 0;
        }
        if (ox_lang->parsed()) {
            auto lang = machine.language(ox_lang_len, ox_lang_level);
            out << "count: " << lang.size() << "\n";
            for (const auto& w : lang) out << w.to_digits() << "\n";
            return 0;
        }
        if (ox_red->parsed()) {
            auto result = oxtoby_reduce(machine, parse_i64_list(ox_beta));
            emit(ox_reduce_out, oxtoby_reduce_csv(result), out);
            return 0;
        }
    }

    err << "error: no subcommand executed\n";
    return 2;
}

} // namespace

} // namespace genericlab
