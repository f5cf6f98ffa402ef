#include "genericlab/oxtoby.hpp"

#include <algorithm>

#include "genericlab/errors.hpp"

namespace genericlab {

namespace {

std::string repeat_str(const std::string& w, std::uint64_t k) {
    std::string out;
    out.reserve(w.size() * k);
    for (std::uint64_t i = 0; i < k; ++i) out += w;
    return out;
}

Rat ratio(const Int& num, const Int& den) {
    Rat r{Rat(num) / Rat(den)};
    r.canonicalize();
    return r;
}

} // namespace

OxtobyMachine OxtobyMachine::build(std::vector<std::uint64_t> s, int depth,
                                   std::uint64_t word_cap) {
    if (depth < 0) throw PreconditionError("depth must be >= 0");
    if (s.size() < static_cast<std::size_t>(depth))
        throw PreconditionError("need one parameter per level");
    Rat recip_sum(0);
    for (std::uint64_t v : s) {
        if (v < 3) throw PreconditionError("parameters must be >= 3");
        Rat r(1, static_cast<unsigned long>(v));
        r.canonicalize();
        recip_sum += r;
    }
    if (recip_sum >= 1)
        throw PreconditionError("reciprocal parameter sum must stay below 1");

    OxtobyMachine m;
    m.s_.assign(1, 0);
    m.s_.insert(m.s_.end(), s.begin(), s.end());
    m.depth_ = depth;
    m.word_cap_ = word_cap;
    m.len_.assign(depth + 1, Int(0));
    m.c_zeros_.assign(depth + 1, Int(0));
    m.c_ones_.assign(depth + 1, Int(0));
    m.w_.assign(depth + 1, "");
    m.z_.assign(depth + 1, "");
    m.o_.assign(depth + 1, "");
    m.have_words_.assign(depth + 1, false);

    m.len_[0] = 1;
    m.c_zeros_[0] = 0;
    m.c_ones_[0] = 1;
    m.w_[0] = "x";
    m.z_[0] = "0";
    m.o_[0] = "1";
    m.have_words_[0] = true;

    for (int n = 1; n <= depth; ++n) {
        const std::uint64_t sn = m.s_[n];
        m.len_[n] = m.len_[n - 1] * static_cast<unsigned long>(sn);
        if (n % 2 == 1) {
            m.c_zeros_[n] = m.c_zeros_[n - 1] * static_cast<unsigned long>(sn);
            m.c_ones_[n] = m.c_zeros_[n - 1] + m.c_ones_[n - 1] * static_cast<unsigned long>(sn - 1);
        } else {
            m.c_zeros_[n] = m.c_ones_[n - 1] + m.c_zeros_[n - 1] * static_cast<unsigned long>(sn - 1);
            m.c_ones_[n] = m.c_ones_[n - 1] * static_cast<unsigned long>(sn);
        }
        if (m.have_words_[n - 1] && m.len_[n] <= static_cast<long>(word_cap)) {
            if (n % 2 == 1) {
                m.w_[n] = m.z_[n - 1] + repeat_str(m.w_[n - 1], sn - 1);
                m.z_[n] = repeat_str(m.z_[n - 1], sn);
                m.o_[n] = m.z_[n - 1] + repeat_str(m.o_[n - 1], sn - 1);
            } else {
                m.w_[n] = m.o_[n - 1] + repeat_str(m.w_[n - 1], sn - 1);
                m.z_[n] = m.o_[n - 1] + repeat_str(m.z_[n - 1], sn - 1);
                m.o_[n] = repeat_str(m.o_[n - 1], sn);
            }
            m.have_words_[n] = true;
        }
    }
    return m;
}

std::uint64_t OxtobyMachine::s_at(int j) const {
    if (j < 1 || j >= static_cast<int>(s_.size()))
        throw PreconditionError("parameter index out of range");
    return s_[j];
}

namespace {
void check_level(int n, int depth) {
    if (n < 0 || n > depth) throw PreconditionError("level out of range");
}
} // namespace

Int OxtobyMachine::length(int n) const { check_level(n, depth_); return len_[n]; }
Int OxtobyMachine::ones_in_zeros(int n) const { check_level(n, depth_); return c_zeros_[n]; }
Int OxtobyMachine::ones_in_ones(int n) const { check_level(n, depth_); return c_ones_[n]; }

Rat OxtobyMachine::m_zeros(int n) const { check_level(n, depth_); return ratio(c_zeros_[n], len_[n]); }
Rat OxtobyMachine::m_ones(int n) const { check_level(n, depth_); return ratio(c_ones_[n], len_[n]); }

Rat OxtobyMachine::gap_product(int n) const {
    check_level(n, depth_);
    Rat prod(1);
    for (int j = 1; j <= n; ++j) {
        Rat term = Rat(1) - Rat(1, static_cast<unsigned long>(s_[j]));
        term.canonicalize();
        prod *= term;
    }
    return prod;
}

std::pair<Rat, Rat> OxtobyMachine::zeros_limit_interval() const {
    Rat tail_budget(1);
    for (int j = 1; j <= depth_; ++j) {
        Rat r(1, static_cast<unsigned long>(s_[j]));
        r.canonicalize();
        tail_budget -= r;
    }
    Rat lo = m_zeros(depth_);
    Rat hi = lo + gap_product(depth_) * tail_budget;
    hi = std::min(hi, m_ones(depth_));
    return {lo, hi};
}

std::pair<Rat, Rat> OxtobyMachine::ones_limit_interval() const {
    Rat tail_budget(1);
    for (int j = 1; j <= depth_; ++j) {
        Rat r(1, static_cast<unsigned long>(s_[j]));
        r.canonicalize();
        tail_budget -= r;
    }
    Rat hi = m_ones(depth_);
    Rat lo = hi - gap_product(depth_) * tail_budget;
    lo = std::max(lo, m_zeros(depth_));
    return {lo, hi};
}

const std::string& OxtobyMachine::W(int n) const {
    check_level(n, depth_);
    if (!have_words_[n]) throw BudgetError("word beyond the materialization cap");
    return w_[n];
}
const std::string& OxtobyMachine::zeros(int n) const {
    check_level(n, depth_);
    if (!have_words_[n]) throw BudgetError("word beyond the materialization cap");
    return z_[n];
}
const std::string& OxtobyMachine::ones(int n) const {
    check_level(n, depth_);
    if (!have_words_[n]) throw BudgetError("word beyond the materialization cap");
    return o_[n];
}
bool OxtobyMachine::materializable(int n) const {
    check_level(n, depth_);
    return have_words_[n];
}

char OxtobyMachine::zeros_symbol(int n, std::uint64_t i) const {
    check_level(n, depth_);
    while (n > 0) {
        const Int& lprev = len_[n - 1];
        const bool inside_first = mpz_cmp_ui(lprev.get_mpz_t(), i) > 0;
        if (n % 2 == 1) {
            // Z_n = Z_{n-1}^{s_n}
            if (!inside_first) i %= lprev.get_ui();
            --n;
        } else {
            // Z_n = O_{n-1} Z_{n-1}^{s_n-1}
            if (inside_first) return ones_symbol(n - 1, i);
            const std::uint64_t lp = lprev.get_ui();
            i = (i - lp) % lp;
            --n;
        }
    }
    return '0';
}

char OxtobyMachine::ones_symbol(int n, std::uint64_t i) const {
    check_level(n, depth_);
    while (n > 0) {
        const Int& lprev = len_[n - 1];
        const bool inside_first = mpz_cmp_ui(lprev.get_mpz_t(), i) > 0;
        if (n % 2 == 1) {
            // O_n = Z_{n-1} O_{n-1}^{s_n-1}
            if (inside_first) return zeros_symbol(n - 1, i);
            const std::uint64_t lp = lprev.get_ui();
            i = (i - lp) % lp;
            --n;
        } else {
            // O_n = O_{n-1}^{s_n}
            if (!inside_first) i %= lprev.get_ui();
            --n;
        }
    }
    return '1';
}

Symbol OxtobyMachine::y_symbol(std::uint64_t i) const {
    for (int n = 0; n <= depth_; ++n) {
        if (mpz_cmp_ui(len_[n].get_mpz_t(), i) > 0) {
            const char c = (n % 2 == 0) ? zeros_symbol(n, i) : ones_symbol(n, i);
            return c == '1' ? 1 : 0;
        }
    }
    throw BudgetError("limit point index beyond the built depth");
}

Point OxtobyMachine::y_point() const {
    nlohmann::ordered_json params = {{"s", std::vector<std::uint64_t>(s_.begin() + 1, s_.end())},
                                     {"depth", depth_}};
    OxtobyMachine copy = *this;
    auto gen = [copy](std::uint64_t i) -> Symbol { return copy.y_symbol(i); };
    return Point::wrap(std::make_shared<CachedRecipePoint>("oxtoby_y", params, gen));
}

std::set<Word> OxtobyMachine::language(std::uint64_t len, int n_level) const {
    check_level(n_level, depth_);
    if (len == 0) throw PreconditionError("language length must be positive");
    if (mpz_cmp_ui(len_[n_level].get_mpz_t(), len) < 0)
        throw PreconditionError("language length exceeds the level word length");
    const std::string& z = zeros(n_level);
    const std::string& o = ones(n_level);
    std::set<Word> out;
    const std::string concats[4] = {z + z, z + o, o + z, o + o};
    for (const std::string& c : concats)
        for (std::size_t i = 0; i + len <= c.size(); ++i) {
            std::vector<Symbol> syms(len);
            for (std::uint64_t k = 0; k < len; ++k) syms[k] = (c[i + k] == '1') ? 1 : 0;
            out.insert(Word(std::move(syms)));
        }
    return out;
}

bool OxtobyMachine::zeros_cascade_is_suffix(const std::vector<std::uint64_t>& js) const {
    if (js.empty()) throw PreconditionError("cascade needs at least one exponent");
    const int k = static_cast<int>(js.size()) - 1;
    check_level(k + 1, depth_);
    for (int i = 0; i <= k; ++i)
        if (js[i] > s_[i + 1] - 2)
            throw PreconditionError("cascade exponent exceeds its parameter budget");
    std::string cascade;
    for (int i = 0; i <= k; ++i) cascade += repeat_str(zeros(i), js[i]);
    const std::string& target = zeros(k + 1);
    if (cascade.size() > target.size()) return false;
    return target.compare(target.size() - cascade.size(), cascade.size(), cascade) == 0;
}

ShiftSpace OxtobyMachine::space_view(int n_level) const {
    check_level(n_level, depth_);
    OxtobyMachine copy = *this;
    auto oracle = [copy, n_level](const Word& w) -> bool {
        if (w.empty()) return true;
        if (mpz_cmp_ui(copy.len_[n_level].get_mpz_t(), w.size()) < 0) return false;
        std::string text;
        text.reserve(w.size());
        for (Symbol sym : w.symbols()) {
            if (sym != 0 && sym != 1) return false;
            text.push_back(sym == 1 ? '1' : '0');
        }
        const std::string& z = copy.zeros(n_level);
        const std::string& o = copy.ones(n_level);
        const std::string concats[4] = {z + z, z + o, o + z, o + o};
        for (const std::string& c : concats)
            if (c.find(text) != std::string::npos) return true;
        return false;
    };
    return ShiftSpace::language_generated("oxtoby-level-" + std::to_string(n_level), oracle);
}

OxtobyReduceResult oxtoby_reduce(const OxtobyMachine& machine,
                                 const std::vector<std::int64_t>& beta,
                                 std::uint64_t sweep_cap, std::uint64_t prefix_cap) {
    if (beta.empty()) throw PreconditionError("reduction needs a nonempty sequence");
    const std::size_t B = beta.size();
    if (machine.depth() < static_cast<int>(2 * B))
        throw PreconditionError("machine depth must cover twice the sequence length");

    OxtobyReduceResult out;
    out.j.resize(B);
    for (std::size_t i = 0; i < B; ++i) {
        if (beta[i] < 0) throw PreconditionError("sequence entries must be nonnegative");
        const std::uint64_t cap = machine.s_at(static_cast<int>(2 * i + 2)) - 2;
        out.j[i] = std::min<std::uint64_t>(static_cast<std::uint64_t>(beta[i]) + 1, cap);
    }

    // Stage i writes j_i copies of Z_{2i+1}; the continuation (when the next
    // odd level exists) begins with O_{2B-1}, enough for the last checkpoint.
    struct Piece {
        int level;
        std::uint64_t copies;
        std::uint64_t copy_len;
        bool continuation;
    };
    std::vector<Piece> pieces;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < B; ++i) {
        const int level = static_cast<int>(2 * i + 1);
        Int li = machine.length(level);
        if (!li.fits_ulong_p()) throw BudgetError("block length overflow");
        Piece p{level, out.j[i], li.get_ui(), false};
        if (total > sweep_cap || p.copies * p.copy_len > sweep_cap - total)
            throw BudgetError("reduction sweep exceeds the cap");
        total += p.copies * p.copy_len;
        pieces.push_back(p);
    }
    const bool have_continuation = machine.depth() >= static_cast<int>(2 * B + 1);
    std::uint64_t continuation_len = 0;
    if (have_continuation) {
        Int lw = machine.length(static_cast<int>(2 * B - 1));
        continuation_len = lw.get_ui();
        if (total + continuation_len > sweep_cap)
            throw BudgetError("reduction sweep exceeds the cap");
    }
    out.total_length = total;

    const Rat a_est = machine.m_zeros(machine.depth());

    // Per-stage bound 3/j_{i-1} + m(Z_depth) as u64 num/den for the sweep's
    // integer cross-multiplications (__int128 keeps the products exact).
    struct StageBound {
        std::uint64_t num = 0, den = 0;
        bool usable = false;
    };
    std::vector<StageBound> bounds(B);
    std::vector<Rat> bound_rats(B);
    for (std::size_t i = 1; i < B; ++i) {
        Rat b = Rat(3, static_cast<unsigned long>(out.j[i - 1]));
        b.canonicalize();
        bound_rats[i] = b + a_est;
        StageBound sb;
        if (bound_rats[i].get_num().fits_ulong_p() && bound_rats[i].get_den().fits_ulong_p()) {
            sb.num = bound_rats[i].get_num().get_ui();
            sb.den = bound_rats[i].get_den().get_ui();
            sb.usable = true;
        }
        bounds[i] = sb;
    }

    // Checkpoint positions: after stage i the stream continues with O_{2i+1}.
    std::vector<std::uint64_t> checkpoint_pos(B, 0);
    {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < B; ++i) {
            acc += pieces[i].copies * pieces[i].copy_len;
            const bool available = (i + 1 < B) || have_continuation;
            checkpoint_pos[i] = available ? acc + pieces[i].copy_len : 0;
        }
    }
    std::vector<std::uint64_t> checkpoint_ones(B, 0);

    // Exact sweep with a running ones count.
    std::uint64_t pos = 0;
    std::uint64_t ones_count = 0;
    out.prefix.reserve(static_cast<std::size_t>(
        std::min<std::uint64_t>(total + continuation_len, prefix_cap)));

    std::size_t cur_stage = 0;
    bool in_stage = false;
    std::uint64_t max_num = 0, max_den = 1, max_arg = 0;
    bool cur_bound_holds = true;

    auto feed = [&](char c) {
        if (c == '1') ++ones_count;
        ++pos;
        if (out.prefix.size() < prefix_cap) out.prefix.push_back(c);
        for (std::size_t i = 0; i < B; ++i)
            if (checkpoint_pos[i] == pos) checkpoint_ones[i] = ones_count;
        if (!in_stage) return;
        if (static_cast<unsigned __int128>(ones_count) * max_den >
            static_cast<unsigned __int128>(max_num) * pos) {
            max_num = ones_count;
            max_den = pos;
            max_arg = pos;
        }
        const StageBound& sb = bounds[cur_stage];
        if (cur_bound_holds && cur_stage >= 1) {
            bool ok;
            if (sb.usable) {
                ok = static_cast<unsigned __int128>(ones_count) * sb.den <=
                     static_cast<unsigned __int128>(sb.num) * pos;
            } else {
                Rat freq(static_cast<unsigned long>(ones_count),
                         static_cast<unsigned long>(pos));
                freq.canonicalize();
                ok = freq <= bound_rats[cur_stage];
            }
            if (!ok) cur_bound_holds = false;
        }
    };

    for (std::size_t i = 0; i < B; ++i) {
        OxtobyStageSweep sw;
        sw.stage = i;
        sw.start = pos + 1;
        if (i >= 1) sw.bound = bound_rats[i];
        cur_stage = i;
        in_stage = true;
        max_num = 0;
        max_den = 1;
        max_arg = pos + 1;
        cur_bound_holds = true;

        const int level = pieces[i].level;
        const bool mat = machine.materializable(level);
        const std::string* word = mat ? &machine.zeros(level) : nullptr;
        for (std::uint64_t c = 0; c < pieces[i].copies; ++c) {
            for (std::uint64_t k = 0; k < pieces[i].copy_len; ++k)
                feed(mat ? (*word)[k] : machine.zeros_symbol(level, k));
            Rat freq(static_cast<unsigned long>(ones_count), static_cast<unsigned long>(pos));
            freq.canonicalize();
            out.boundary_series.emplace_back(pos, freq);
        }
        sw.end = pos;
        sw.max_freq = Rat(static_cast<unsigned long>(max_num),
                          static_cast<unsigned long>(max_den));
        sw.max_freq.canonicalize();
        sw.argmax = max_arg;
        sw.bound_holds = cur_bound_holds;
        out.stages.push_back(std::move(sw));
    }
    in_stage = false;

    if (have_continuation) {
        const int next_level = static_cast<int>(2 * B + 1);
        for (std::uint64_t k = 0; k < continuation_len; ++k)
            feed(machine.zeros_symbol(next_level, k));
    }

    for (std::size_t i = 0; i < B; ++i) {
        if (checkpoint_pos[i] == 0) continue;
        if (checkpoint_pos[i] > pos)
            throw BudgetError("checkpoint beyond the generated stream");
        OxtobyCheckpoint chk;
        chk.stage = i;
        chk.position = checkpoint_pos[i];
        chk.actual_freq = Rat(static_cast<unsigned long>(checkpoint_ones[i]),
                              static_cast<unsigned long>(checkpoint_pos[i]));
        chk.actual_freq.canonicalize();
        const int level = pieces[i].level;
        Rat denom = Rat(static_cast<unsigned long>(out.j[i])) + Rat(1) +
                    Rat(1, static_cast<unsigned long>(machine.s_at(level)));
        denom.canonicalize();
        chk.window_lower_bound =
            (Rat(static_cast<unsigned long>(out.j[i])) * machine.m_zeros(level) +
             machine.m_ones(level)) /
            denom;
        out.checkpoints.push_back(std::move(chk));
    }
    return out;
}

} // namespace genericlab
