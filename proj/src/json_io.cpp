#include "genericlab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "genericlab/errors.hpp"

namespace genericlab {

namespace {

std::vector<Symbol> symbols_from_json(const Json& j) {
    std::vector<Symbol> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError("symbol entries must be integers");
        const long long x = v.get<long long>();
        if (x < 0) throw ParseError("point symbols must be nonnegative");
        out.push_back(static_cast<Symbol>(x));
    }
    return out;
}

std::string word_key(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(w[i]);
    }
    return out;
}

Word word_from_key(const std::string& key) {
    std::vector<Symbol> syms;
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ','))
        syms.push_back(static_cast<Symbol>(std::stol(tok)));
    if (syms.empty()) throw ParseError("empty observable table key");
    return Word(std::move(syms));
}

} // namespace

Json point_to_json(const Point& p) {
    if (auto ep = p.ep_form()) {
        return Json{{"kind", "ep"}, {"pre", ep->pre.symbols()}, {"per", ep->per.symbols()}};
    }
    Json j{{"kind", "recipe"},
           {"name", p.impl().recipe_name()},
           {"params", p.impl().recipe_params()}};
    if (p.offset() != 0) j["shift"] = p.offset();
    return j;
}

Point point_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("point needs a kind");
    const std::string kind = j.at("kind").get<std::string>();
    std::uint64_t shift = j.value("shift", 0ULL);
    if (kind == "ep") {
        Word pre(symbols_from_json(j.value("pre", Json::array())));
        Word per(symbols_from_json(j.at("per")));
        return Point::eventually_periodic(std::move(pre), std::move(per)).shift(shift);
    }
    if (kind == "recipe") {
        return make_recipe_point(j.at("name").get<std::string>(), j.value("params", Json::object()))
            .shift(shift);
    }
    throw ParseError("unknown point kind '" + kind + "'");
}

Json measure_to_json(const DiscreteMeasure& mu) {
    Json support = Json::array();
    Json weights = Json::array();
    for (std::size_t i = 0; i < mu.size(); ++i) {
        support.push_back(point_to_json(mu.support[i]));
        weights.push_back(rat_str(mu.weights[i]));
    }
    return Json{{"support", support}, {"weights", weights}, {"horizon", mu.horizon}};
}

DiscreteMeasure measure_from_json(const Json& j, std::uint64_t default_horizon) {
    if (!j.is_object() || !j.contains("support") || !j.contains("weights"))
        throw ParseError("measure needs support and weights");
    const std::uint64_t horizon = j.value("horizon", default_horizon);
    const auto& sup = j.at("support");
    const auto& wts = j.at("weights");
    if (sup.size() != wts.size()) throw ParseError("measure support/weights size mismatch");
    std::vector<std::pair<Point, Rat>> atoms;
    for (std::size_t i = 0; i < sup.size(); ++i)
        atoms.emplace_back(point_from_json(sup[i]), parse_rat(wts[i].get<std::string>()));
    return make_measure(std::move(atoms), horizon);
}

Json specification_to_json(const Specification& xi) {
    Json j = Json::array();
    for (const auto& [p, n] : xi.segments) j.push_back(Json::array({point_to_json(p), n}));
    return j;
}

Specification specification_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("specification must be an array of [point,length] pairs");
    Specification xi;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2)
            throw ParseError("specification entries must be [point, length] pairs");
        xi.segments.emplace_back(point_from_json(item[0]), item[1].get<std::uint64_t>());
    }
    xi.validate();
    return xi;
}

Json observable_to_json(const LocalObservable& phi) {
    Json table = Json::object();
    for (const auto& [w, v] : phi.table) table[word_key(w)] = rat_str(v);
    return Json{{"window", phi.window}, {"table", table}, {"default", rat_str(phi.default_value)}};
}

LocalObservable observable_from_json(const Json& j) {
    LocalObservable phi;
    phi.window = j.value("window", 1);
    if (phi.window < 1) throw ParseError("observable window must be >= 1");
    phi.default_value = parse_rat(j.value("default", std::string("0")));
    if (j.contains("table")) {
        for (const auto& [key, val] : j.at("table").items()) {
            Word w = word_from_key(key);
            if (static_cast<int>(w.size()) != phi.window)
                throw ParseError("observable table key length must equal the window");
            phi.table[w] = parse_rat(val.get<std::string>());
        }
    }
    return phi;
}

Json tree_to_json(const TreeOnOmega& t) {
    Json j = Json::array();
    for (const auto& node : t.nodes) j.push_back(node);
    return j;
}

TreeOnOmega tree_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("tree must be an array of integer arrays");
    std::vector<std::vector<Symbol>> nodes;
    for (const auto& item : j) nodes.push_back(symbols_from_json(item));
    return TreeOnOmega::from_nodes(std::move(nodes));
}

Json trace_report_to_json(const TraceReport& r) {
    Json segs = Json::array();
    for (const auto& s : r.segments) {
        segs.push_back(Json{{"length", s.length},
                            {"gap_before", s.gap_before},
                            {"lambda_size", s.lambda_size},
                            {"errors", s.errors}});
    }
    Json j{{"verdict", r.verdict},
           {"gaps", r.gaps},
           {"total_length", r.total_length},
           {"segments", segs}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json oxtoby_machine_to_json(const OxtobyMachine& m) {
    Json levels = Json::array();
    for (int n = 0; n <= m.depth(); ++n) {
        Json level{{"n", n},
                   {"length", m.length(n).get_str()},
                   {"m_zeros", rat_str(m.m_zeros(n))},
                   {"m_ones", rat_str(m.m_ones(n))},
                   {"gap_product", rat_str(m.gap_product(n))}};
        if (m.materializable(n)) {
            level["W"] = m.W(n);
            level["zeros"] = m.zeros(n);
            level["ones"] = m.ones(n);
        }
        levels.push_back(std::move(level));
    }
    auto a_iv = m.zeros_limit_interval();
    auto b_iv = m.ones_limit_interval();
    return Json{{"s", m.s_list()},
                {"depth", m.depth()},
                {"levels", levels},
                {"zeros_limit_interval", {rat_str(a_iv.first), rat_str(a_iv.second)}},
                {"ones_limit_interval", {rat_str(b_iv.first), rat_str(b_iv.second)}}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << text;
}

namespace {
void csv_rat(std::ostringstream& os, const Rat& q) {
    os << rat_str(q) << "," << rat_decimal(q);
}
} // namespace

std::string vset_csv(const VsetDiagnostics& d) {
    std::ostringstream os;
    os << "n,target_id,distance_num,distance_den,distance_decimal\n";
    for (const auto& row : d.rows) {
        os << row.n << "," << row.target_id << "," << row.distance.get_num().get_str() << ","
           << row.distance.get_den().get_str() << "," << rat_decimal(row.distance) << "\n";
    }
    os << "cauchy_k,cauchy_l,distance_num,distance_den,distance_decimal\n";
    for (const auto& [k, l, dist] : d.cauchy) {
        os << k << "," << l << "," << dist.get_num().get_str() << ","
           << dist.get_den().get_str() << "," << rat_decimal(dist) << "\n";
    }
    return os.str();
}

std::string certificate_csv(const std::vector<StageCertificate>& rows) {
    std::ostringstream os;
    os << "stage,K,ell,L,bound,bound_decimal,achieved,achieved_decimal,pass,"
          "term_limit_shift,term_trace,term_drop_head,term_anchor,terms_pass\n";
    for (const auto& c : rows) {
        os << c.n << "," << c.K << "," << c.ell << "," << c.L << ",";
        csv_rat(os, c.bound);
        os << ",";
        csv_rat(os, c.achieved);
        os << "," << (c.pass ? "true" : "false") << "," << rat_str(c.term_limit_shift) << ","
           << rat_str(c.term_trace) << "," << rat_str(c.term_drop_head) << ","
           << rat_str(c.term_anchor) << "," << (c.terms_pass ? "true" : "false") << "\n";
    }
    return os.str();
}

std::string psi_checkpoints_csv(const PsiReductionResult& r) {
    std::ostringstream os;
    os << "stage,L,psi,dist_to_stage_target,dist_to_stage_target_decimal,"
          "dist_to_base_target,dist_to_base_target_decimal,stage_bound\n";
    for (const auto& row : r.checkpoints) {
        os << row.stage << "," << row.L << "," << rat_str(row.psi_value) << ",";
        csv_rat(os, row.dist_to_stage_target);
        os << ",";
        csv_rat(os, row.dist_to_base_target);
        os << "," << rat_str(row.stage_bound) << "\n";
    }
    return os.str();
}

std::string series_csv(const std::vector<std::pair<std::uint64_t, Rat>>& series,
                       const std::string& key_name, const std::string& value_name) {
    std::ostringstream os;
    os << key_name << "," << value_name << "," << value_name << "_decimal\n";
    for (const auto& [k, v] : series) {
        os << k << ",";
        csv_rat(os, v);
        os << "\n";
    }
    return os.str();
}

std::string oxtoby_stats_csv(const OxtobyMachine& m) {
    std::ostringstream os;
    os << "n,s,length,m_zeros,m_zeros_decimal,m_ones,m_ones_decimal,gap_product\n";
    for (int n = 0; n <= m.depth(); ++n) {
        os << n << "," << (n >= 1 ? std::to_string(m.s_at(n)) : "") << ","
           << m.length(n).get_str() << ",";
        csv_rat(os, m.m_zeros(n));
        os << ",";
        csv_rat(os, m.m_ones(n));
        os << "," << rat_str(m.gap_product(n)) << "\n";
    }
    return os.str();
}

std::string oxtoby_reduce_csv(const OxtobyReduceResult& r) {
    std::ostringstream os;
    os << "kind,stage,position,value,value_decimal,bound,holds\n";
    for (const auto& sw : r.stages) {
        os << "stage_max," << sw.stage << "," << sw.argmax << ",";
        csv_rat(os, sw.max_freq);
        os << "," << (sw.bound ? rat_str(*sw.bound) : "") << ","
           << (sw.bound ? (sw.bound_holds ? "true" : "false") : "") << "\n";
    }
    for (const auto& chk : r.checkpoints) {
        os << "checkpoint," << chk.stage << "," << chk.position << ",";
        csv_rat(os, chk.actual_freq);
        os << "," << rat_str(chk.window_lower_bound) << ","
           << (chk.actual_freq >= chk.window_lower_bound ? "true" : "false") << "\n";
    }
    return os.str();
}

} // namespace genericlab
