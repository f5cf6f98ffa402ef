#include "genericlab/measure.hpp"

#include <unordered_map>

#include "genericlab/errors.hpp"

namespace genericlab {

void Specification::validate() const {
    if (segments.empty()) throw PreconditionError("specification must be nonempty");
    for (const auto& [p, n] : segments) {
        if (!p.valid()) throw PreconditionError("specification segment has no point");
        if (n < 1) throw PreconditionError("specification segment lengths must be >= 1");
    }
}

void DiscreteMeasure::validate() const {
    if (support.size() != weights.size())
        throw PreconditionError("measure support/weights size mismatch");
    if (support.empty()) throw PreconditionError("measure must have nonempty support");
    Rat total(0);
    for (const Rat& w : weights) {
        if (w < 0) throw PreconditionError("measure weights must be nonnegative");
        total += w;
    }
    if (total != 1) throw PreconditionError("measure weights must sum to exactly 1");
}

namespace {

struct WordKeyHash {
    std::size_t operator()(const Word& w) const { return static_cast<std::size_t>(word_hash(w)); }
};

DiscreteMeasure merge_atoms(std::vector<std::pair<Point, Rat>>&& atoms, std::uint64_t horizon) {
    if (horizon < 1) throw PreconditionError("measure horizon must be >= 1");
    DiscreteMeasure out;
    out.horizon = horizon;
    std::unordered_map<Word, std::size_t, WordKeyHash> index;
    index.reserve(atoms.size() * 2);
    for (auto& [p, w] : atoms) {
        if (w < 0) throw PreconditionError("measure weights must be nonnegative");
        if (w == 0) continue;
        Word key = p.prefix(horizon);
        auto [it, inserted] = index.emplace(std::move(key), out.support.size());
        if (inserted) {
            out.support.push_back(p);
            out.weights.push_back(w);
        } else {
            out.weights[it->second] += w;
        }
    }
    out.validate();
    return out;
}

} // namespace

DiscreteMeasure make_measure(std::vector<std::pair<Point, Rat>> atoms, std::uint64_t horizon) {
    return merge_atoms(std::move(atoms), horizon);
}

DiscreteMeasure dirac(const Point& x, std::uint64_t horizon) {
    return make_measure({{x, Rat(1)}}, horizon);
}

DiscreteMeasure emp_measure(const Point& x, std::uint64_t n, std::uint64_t horizon) {
    if (n < 1) throw PreconditionError("empirical measure needs n >= 1");
    if (horizon < 1) throw PreconditionError("empirical measure needs horizon >= 1");

    // Materialize one buffer and dedupe windows; atoms are shifts of x.
    const std::uint64_t need = n - 1 + horizon;
    std::vector<Symbol> buf;
    buf.reserve(need);
    for (std::uint64_t i = 0; i < need; ++i) buf.push_back(x.at(i));

    struct SpanHash {
        const std::vector<Symbol>* buf;
        std::uint64_t h;
        std::uint64_t hash_at(std::uint64_t i) const {
            std::uint64_t acc = 1469598103934665603ULL;
            for (std::uint64_t k = 0; k < h; ++k) {
                auto u = static_cast<std::uint32_t>((*buf)[i + k]);
                acc ^= u;
                acc *= 1099511628211ULL;
                acc ^= u >> 16;
                acc *= 1099511628211ULL;
            }
            return acc;
        }
        bool equal(std::uint64_t a, std::uint64_t b) const {
            for (std::uint64_t k = 0; k < h; ++k)
                if ((*buf)[a + k] != (*buf)[b + k]) return false;
            return true;
        }
    } win{&buf, horizon};

    std::unordered_multimap<std::uint64_t, std::size_t> seen; // hash -> atom id
    std::vector<std::uint64_t> first_index;                   // atom id -> window start
    std::vector<std::uint64_t> multiplicity;
    seen.reserve(n * 2);
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t h = win.hash_at(i);
        auto range = seen.equal_range(h);
        bool found = false;
        for (auto it = range.first; it != range.second; ++it) {
            if (win.equal(first_index[it->second], i)) {
                ++multiplicity[it->second];
                found = true;
                break;
            }
        }
        if (!found) {
            seen.emplace(h, first_index.size());
            first_index.push_back(i);
            multiplicity.push_back(1);
        }
    }

    DiscreteMeasure out;
    out.horizon = horizon;
    out.support.reserve(first_index.size());
    out.weights.reserve(first_index.size());
    for (std::size_t a = 0; a < first_index.size(); ++a) {
        out.support.push_back(x.shift(first_index[a]));
        Rat w(static_cast<unsigned long>(multiplicity[a]), static_cast<unsigned long>(n));
        w.canonicalize();
        out.weights.push_back(w);
    }
    out.validate();
    return out;
}

DiscreteMeasure emp_of_points(std::span<const Point> points, std::uint64_t horizon) {
    if (points.empty()) throw PreconditionError("empirical measure of an empty list");
    std::vector<std::pair<Point, Rat>> atoms;
    atoms.reserve(points.size());
    Rat w(1, static_cast<unsigned long>(points.size()));
    w.canonicalize();
    for (const Point& p : points) atoms.emplace_back(p, w);
    return merge_atoms(std::move(atoms), horizon);
}

DiscreteMeasure emp_of_specification(const Specification& xi, std::uint64_t horizon) {
    xi.validate();
    const std::uint64_t total = xi.total_length();
    std::vector<Rat> coeffs;
    std::vector<DiscreteMeasure> parts;
    coeffs.reserve(xi.segments.size());
    parts.reserve(xi.segments.size());
    for (const auto& [p, n] : xi.segments) {
        Rat c(static_cast<unsigned long>(n), static_cast<unsigned long>(total));
        c.canonicalize();
        coeffs.push_back(c);
        parts.push_back(emp_measure(p, n, horizon));
    }
    return convex_combine(coeffs, parts, horizon);
}

DiscreteMeasure convex_combine(std::span<const Rat> coeffs,
                               std::span<const DiscreteMeasure> measures,
                               std::uint64_t horizon) {
    if (coeffs.size() != measures.size())
        throw PreconditionError("convex_combine: mismatched coefficient/measure lists");
    if (coeffs.empty()) throw PreconditionError("convex_combine: empty input");
    Rat total(0);
    for (const Rat& c : coeffs) {
        if (c < 0) throw PreconditionError("convex_combine: coefficients must be nonnegative");
        total += c;
    }
    if (total != 1) throw PreconditionError("convex_combine: coefficients must sum to 1");
    std::vector<std::pair<Point, Rat>> atoms;
    for (std::size_t m = 0; m < measures.size(); ++m) {
        if (coeffs[m] == 0) continue;
        measures[m].validate();
        for (std::size_t i = 0; i < measures[m].size(); ++i)
            atoms.emplace_back(measures[m].support[i], coeffs[m] * measures[m].weights[i]);
    }
    return merge_atoms(std::move(atoms), horizon);
}

DiscreteMeasure orbit_measure(const Point& periodic_point, std::uint64_t horizon) {
    auto per = periodic_point.periodic_form();
    if (!per) throw PreconditionError("orbit measure requires a purely periodic point");
    return emp_measure(periodic_point, per->size(), horizon);
}

} // namespace genericlab
