#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "genericlab/rational.hpp"
#include "genericlab/word.hpp"

namespace genericlab {

struct EpData {
    Word pre;
    Word per; // nonempty
};

// One infinite symbol sequence with a finite description. Implementations are
// immutable after construction except for memoized caches.
class PointImpl {
public:
    virtual ~PointImpl() = default;
    virtual Symbol at(std::uint64_t i) const = 0;
    virtual const EpData* ep_data() const { return nullptr; }
    virtual std::string recipe_name() const { return {}; }
    virtual nlohmann::ordered_json recipe_params() const { return {}; }
};

// Value handle: (shared immutable description, shift offset). All operations
// are pure functions of (value, horizon).
class Point {
public:
    Point() = default;

    static Point periodic(Word per);
    static Point eventually_periodic(Word pre, Word per);
    static Point constant(Symbol s);
    static Point wrap(std::shared_ptr<const PointImpl> impl, std::uint64_t offset = 0);

    bool valid() const { return static_cast<bool>(impl_); }
    Symbol at(std::uint64_t i) const { return impl_->at(offset_ + i); }
    Word prefix(std::uint64_t n) const;
    Point shift(std::uint64_t k) const { return Point(impl_, offset_ + k); }

    std::uint64_t offset() const { return offset_; }
    const PointImpl& impl() const { return *impl_; }
    std::shared_ptr<const PointImpl> impl_ptr() const { return impl_; }

    // Canonical (preperiod, period) with the offset folded in, when the
    // underlying description is eventually periodic.
    std::optional<EpData> ep_form() const;

    // Period word when the point is purely periodic (empty preperiod).
    std::optional<Word> periodic_form() const;

private:
    Point(std::shared_ptr<const PointImpl> impl, std::uint64_t offset)
        : impl_(std::move(impl)), offset_(offset) {}

    std::shared_ptr<const PointImpl> impl_;
    std::uint64_t offset_ = 0;
};

// Point described by a finite list of (word, repeat) blocks followed by a
// periodic tail; lookups index the block table directly.
class BlockPoint final : public PointImpl {
public:
    BlockPoint(std::vector<std::pair<Word, std::uint64_t>> blocks, Word tail_period);

    Symbol at(std::uint64_t i) const override;
    std::string recipe_name() const override { return "blocks"; }
    nlohmann::ordered_json recipe_params() const override;

    std::uint64_t blocks_length() const { return total_; }
    const std::vector<std::pair<Word, std::uint64_t>>& blocks() const { return blocks_; }
    const Word& tail_period() const { return tail_; }

private:
    std::vector<std::pair<Word, std::uint64_t>> blocks_;
    std::vector<std::uint64_t> cum_; // cumulative end positions
    Word tail_;
    std::uint64_t total_ = 0;
};

// Generator-backed point with a memoized prefix cache; extension is guarded
// by a mutex so concurrent readers stay safe.
class CachedRecipePoint : public PointImpl {
public:
    CachedRecipePoint(std::string name, nlohmann::ordered_json params,
                      std::function<Symbol(std::uint64_t)> gen);

    Symbol at(std::uint64_t i) const override;
    std::string recipe_name() const override { return name_; }
    nlohmann::ordered_json recipe_params() const override { return params_; }

private:
    std::string name_;
    nlohmann::ordered_json params_;
    std::function<Symbol(std::uint64_t)> gen_;
    mutable std::mutex mu_;
    mutable std::vector<Symbol> cache_;
};

// Registry mapping recipe names to factories, for JSON round trips.
using RecipeFactory = std::function<Point(const nlohmann::ordered_json& params)>;
void register_recipe(const std::string& name, RecipeFactory factory);
bool recipe_registered(const std::string& name);
Point make_recipe_point(const std::string& name, const nlohmann::ordered_json& params);
void register_core_recipes();

// Index of the first disagreement between x and y, scanning at most `horizon`
// symbols; nullopt when they agree through the horizon.
std::optional<std::uint64_t> first_disagreement(const Point& x, const Point& y,
                                                std::uint64_t horizon);

// rho(x,y) = 2^{-k}, k = first disagreement index; 0 when the prefixes agree
// through the horizon (reported as "<= 2^-horizon" by callers that care).
Rat rho(const Point& x, const Point& y, std::uint64_t horizon);

} // namespace genericlab
