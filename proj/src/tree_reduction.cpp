#include "genericlab/tree_reduction.hpp"

#include <algorithm>

#include "genericlab/errors.hpp"

namespace genericlab {

namespace {

std::vector<Symbol>& prime_table() {
    static std::vector<Symbol> primes{2, 3};
    return primes;
}

bool is_prime_trial(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

} // namespace

Symbol nth_prime(std::size_t n) {
    auto& primes = prime_table();
    while (primes.size() <= n) {
        std::uint64_t cand = static_cast<std::uint64_t>(primes.back()) + 1;
        while (!is_prime_trial(cand)) ++cand;
        if (cand > 2'000'000'000ULL) throw BudgetError("prime index out of range");
        primes.push_back(static_cast<Symbol>(cand));
    }
    return primes[n];
}

std::uint64_t pairing(std::uint64_t n, std::uint64_t i) {
    const std::uint64_t s = n + i;
    return s * (s + 1) / 2 + i;
}

Symbol composite_q(std::size_t n) {
    std::size_t seen = 0;
    for (std::uint64_t v = 2;; ++v) {
        if (v > 2'000'000'000ULL) throw BudgetError("composite index out of range");
        // count distinct prime divisors (need at least two)
        std::uint64_t rest = v;
        int distinct = 0;
        for (std::uint64_t d = 2; d * d <= rest && distinct < 2; ++d) {
            if (rest % d == 0) {
                ++distinct;
                while (rest % d == 0) rest /= d;
            }
        }
        if (rest > 1) ++distinct;
        if (distinct >= 2) {
            if (seen == n) return static_cast<Symbol>(v);
            ++seen;
        }
    }
}

TreeOnOmega TreeOnOmega::from_nodes(std::vector<std::vector<Symbol>> nodes) {
    TreeOnOmega t;
    for (auto& node : nodes) {
        for (Symbol s : node)
            if (s < 0) throw PreconditionError("tree node entries must be nonnegative");
        t.nodes.insert(std::move(node));
    }
    // prefix closure: every proper prefix of a node must be present
    for (const auto& node : t.nodes) {
        std::vector<Symbol> prefix;
        for (std::size_t i = 0; i + 1 <= node.size(); ++i) {
            prefix.assign(node.begin(), node.begin() + i);
            if (!t.nodes.count(prefix))
                throw PreconditionError("tree is not closed under initial segments");
        }
    }
    return t;
}

NodeEnumeration NodeEnumeration::standard(Symbol max_entry, int max_len) {
    if (max_entry < 1 || max_len < 0) throw PreconditionError("bad enumeration bounds");
    NodeEnumeration e;
    e.max_entry = max_entry;
    e.max_len = max_len;
    e.nodes.push_back({}); // empty sequence first
    std::vector<std::vector<Symbol>> current{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<Symbol>> next;
        for (const auto& base : current) {
            for (Symbol v = 0; v < max_entry; ++v) {
                auto node = base;
                node.push_back(v);
                next.push_back(std::move(node));
            }
        }
        std::sort(next.begin(), next.end());
        for (auto& node : next) e.nodes.push_back(node);
        current = std::move(next);
    }
    return e;
}

const std::vector<Symbol>& NodeEnumeration::at(std::size_t i) const {
    if (i == 0 || i > nodes.size()) throw PreconditionError("enumeration index out of range");
    return nodes[i - 1];
}

Word node_periodic_word(const std::vector<Symbol>& s) {
    const std::size_t l = s.size();
    Word out;
    for (std::size_t i = 0; i < l; ++i) {
        const Symbol p = nth_prime(pairing(static_cast<std::uint64_t>(s[i]), i));
        const std::uint64_t reps = 1ULL << (2 * l - i); // 2^{2l-i}
        out.append(concat_power(Word(std::vector<Symbol>{p}), reps));
    }
    out.append(concat_power(Word(std::vector<Symbol>{1}), 1ULL << (l + 1)));
    return out;
}

DiscreteMeasure node_measure(const std::vector<Symbol>& s, std::uint64_t horizon) {
    const std::size_t l = s.size();
    std::vector<std::pair<Point, Rat>> atoms;
    atoms.emplace_back(Point::constant(1), pow2(-static_cast<long>(l)));
    for (std::size_t i = 0; i < l; ++i) {
        const Symbol p = nth_prime(pairing(static_cast<std::uint64_t>(s[i]), i));
        atoms.emplace_back(Point::constant(p), pow2(-static_cast<long>(i) - 1));
    }
    return make_measure(std::move(atoms), horizon);
}

TreePointResult tree_point(const TreeOnOmega& tree, int stages, const NodeEnumeration& enumeration,
                           std::uint64_t length_cap) {
    if (stages < 1) throw PreconditionError("tree point needs stages >= 1");

    // a_1 = 2, a_{2m} = primary period of the m-th node word, a_{2m+1} = 1.
    std::vector<std::uint64_t> a(stages + 2, 0);
    a[1] = 2;
    std::vector<Word> node_words(stages / 2 + 2);
    for (int m = 1; 2 * m <= stages + 1; ++m) {
        if (static_cast<std::size_t>(m) > enumeration.count())
            throw PreconditionError("enumeration too short for the requested stages");
        node_words[m] = node_periodic_word(enumeration.at(m));
        Word primary(std::vector<Symbol>(node_words[m].symbols().begin(),
                                         node_words[m].symbols().begin() +
                                             primary_period(node_words[m])));
        node_words[m] = primary;
        a[2 * m] = primary.size();
        if (2 * m + 1 <= stages + 1) a[2 * m + 1] = 1;
    }

    TreePointResult out;
    std::vector<std::pair<Word, std::uint64_t>> blocks;
    std::uint64_t ell = 0; // cumulative length
    std::uint64_t b_prev = 0;
    Word last_word;
    for (int n = 1; n <= stages; ++n) {
        // smallest b with a_n b > max(2^n a_{n+1}, 2^n ell_{n-1}) and b > b_{n-1}
        const std::uint64_t scale = 1ULL << n;
        const std::uint64_t need = std::max(scale * a[n + 1], scale * ell);
        std::uint64_t b = need / a[n] + 1;
        b = std::max(b, b_prev + 1);
        b_prev = b;

        TreeStage stage;
        stage.n = n;
        stage.a = a[n];
        stage.b = b;
        stage.length = a[n] * b;
        if (ell > length_cap || stage.length > length_cap - ell)
            throw BudgetError("tree point stage " + std::to_string(n) +
                              " would exceed the length cap");

        Word block_word;
        if (n % 2 == 1) {
            block_word = Word(std::vector<Symbol>{0});
            blocks.emplace_back(block_word, stage.length);
        } else {
            const int m = n / 2;
            stage.node = enumeration.at(m);
            stage.node_block = tree.contains(stage.node);
            if (stage.node_block) {
                block_word = node_words[m];
                blocks.emplace_back(block_word, b);
            } else {
                block_word = Word(std::vector<Symbol>{composite_q(m)});
                blocks.emplace_back(block_word, stage.length);
            }
        }
        ell += stage.length;
        stage.end = ell;
        last_word = std::move(block_word);
        out.stages.push_back(std::move(stage));
    }
    out.total_length = ell;
    out.x = Point::wrap(std::make_shared<BlockPoint>(std::move(blocks), last_word));
    return out;
}

} // namespace genericlab
