#include "genericlab/point.hpp"

#include <algorithm>
#include <map>

#include "genericlab/errors.hpp"

namespace genericlab {

namespace {

class EpPoint final : public PointImpl {
public:
    EpPoint(Word pre, Word per) : data_{std::move(pre), std::move(per)} {
        if (data_.per.empty()) throw PreconditionError("eventually periodic point needs a nonempty period");
        if (data_.pre.has_placeholder() || data_.per.has_placeholder())
            throw PreconditionError("placeholder symbol cannot appear in a point");
        for (Symbol s : data_.pre.symbols())
            if (s < 0) throw PreconditionError("point symbols must be nonnegative");
        for (Symbol s : data_.per.symbols())
            if (s < 0) throw PreconditionError("point symbols must be nonnegative");
    }

    Symbol at(std::uint64_t i) const override {
        if (i < data_.pre.size()) return data_.pre[i];
        return data_.per[(i - data_.pre.size()) % data_.per.size()];
    }

    const EpData* ep_data() const override { return &data_; }

private:
    EpData data_;
};

} // namespace

Point Point::periodic(Word per) {
    return wrap(std::make_shared<EpPoint>(Word{}, std::move(per)));
}

Point Point::eventually_periodic(Word pre, Word per) {
    return wrap(std::make_shared<EpPoint>(std::move(pre), std::move(per)));
}

Point Point::constant(Symbol s) {
    return periodic(Word(std::vector<Symbol>{s}));
}

Point Point::wrap(std::shared_ptr<const PointImpl> impl, std::uint64_t offset) {
    return Point(std::move(impl), offset);
}

Word Point::prefix(std::uint64_t n) const {
    std::vector<Symbol> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(at(i));
    return Word(std::move(out));
}

std::optional<EpData> Point::ep_form() const {
    const EpData* d = impl_->ep_data();
    if (!d) return std::nullopt;
    EpData out;
    if (offset_ <= d->pre.size()) {
        out.pre = d->pre.sub(offset_, d->pre.size() - offset_);
        out.per = d->per;
    } else {
        const std::uint64_t k = (offset_ - d->pre.size()) % d->per.size();
        std::vector<Symbol> rot;
        rot.reserve(d->per.size());
        for (std::size_t i = 0; i < d->per.size(); ++i)
            rot.push_back(d->per[(k + i) % d->per.size()]);
        out.per = Word(std::move(rot));
    }
    return out;
}

std::optional<Word> Point::periodic_form() const {
    auto ep = ep_form();
    if (!ep) return std::nullopt;
    // A preperiod that is consistent with the periodic tail folds away.
    const Word& per = ep->per;
    const Word& pre = ep->pre;
    const std::size_t p = per.size();
    for (std::size_t i = 0; i < pre.size(); ++i) {
        // symbol i must match the tail extended backwards
        const std::size_t phase = (p - ((pre.size() - i) % p)) % p;
        if (pre[i] != per[phase]) return std::nullopt;
    }
    if (pre.empty()) return per;
    const std::size_t shiftback = pre.size() % p;
    std::vector<Symbol> rot;
    rot.reserve(p);
    for (std::size_t i = 0; i < p; ++i) rot.push_back(per[(p - shiftback + i) % p]);
    return Word(std::move(rot));
}

BlockPoint::BlockPoint(std::vector<std::pair<Word, std::uint64_t>> blocks, Word tail_period)
    : blocks_(std::move(blocks)), tail_(std::move(tail_period)) {
    if (tail_.empty()) throw PreconditionError("block point needs a nonempty tail period");
    for (const auto& [w, k] : blocks_) {
        if (w.empty() && k > 0) throw PreconditionError("empty block word");
        total_ += w.size() * k;
        cum_.push_back(total_);
    }
}

Symbol BlockPoint::at(std::uint64_t i) const {
    if (i >= total_) return tail_[(i - total_) % tail_.size()];
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), i);
    const std::size_t b = static_cast<std::size_t>(it - cum_.begin());
    const std::uint64_t start = (b == 0) ? 0 : cum_[b - 1];
    const Word& w = blocks_[b].first;
    return w[(i - start) % w.size()];
}

nlohmann::ordered_json BlockPoint::recipe_params() const {
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (const auto& [w, k] : blocks_)
        blocks.push_back({{"word", w.symbols()}, {"repeat", k}});
    return {{"blocks", blocks}, {"tail", tail_.symbols()}};
}

CachedRecipePoint::CachedRecipePoint(std::string name, nlohmann::ordered_json params,
                                     std::function<Symbol(std::uint64_t)> gen)
    : name_(std::move(name)), params_(std::move(params)), gen_(std::move(gen)) {}

Symbol CachedRecipePoint::at(std::uint64_t i) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (cache_.size() <= i) cache_.push_back(gen_(cache_.size()));
    return cache_[i];
}

namespace {

std::map<std::string, RecipeFactory>& registry() {
    static std::map<std::string, RecipeFactory> r;
    return r;
}

Point make_alternating_blocks(const nlohmann::ordered_json& params) {
    const std::uint64_t growth = params.value("growth", 4ULL);
    const Symbol a = params.value("first", 0);
    const Symbol b = params.value("second", 1);
    if (growth < 2) throw PreconditionError("alternating_blocks growth must be >= 2");
    nlohmann::ordered_json canon = {{"growth", growth}, {"first", a}, {"second", b}};
    auto gen = [growth, a, b](std::uint64_t i) -> Symbol {
        // blocks a^{g^0} b^{g^0} a^{g^1} b^{g^1} ...
        std::uint64_t len = 1, pos = i;
        for (;;) {
            if (pos < len) return a;
            pos -= len;
            if (pos < len) return b;
            pos -= len;
            len *= growth;
        }
    };
    return Point::wrap(std::make_shared<CachedRecipePoint>("alternating_blocks", canon, gen));
}

Point make_blocks(const nlohmann::ordered_json& params) {
    std::vector<std::pair<Word, std::uint64_t>> blocks;
    for (const auto& item : params.at("blocks")) {
        std::vector<Symbol> w = item.at("word").get<std::vector<Symbol>>();
        blocks.emplace_back(Word(std::move(w)), item.at("repeat").get<std::uint64_t>());
    }
    Word tail(params.at("tail").get<std::vector<Symbol>>());
    return Point::wrap(std::make_shared<BlockPoint>(std::move(blocks), std::move(tail)));
}

} // namespace

void register_recipe(const std::string& name, RecipeFactory factory) {
    registry()[name] = std::move(factory);
}

bool recipe_registered(const std::string& name) {
    return registry().count(name) > 0;
}

Point make_recipe_point(const std::string& name, const nlohmann::ordered_json& params) {
    auto it = registry().find(name);
    if (it == registry().end()) throw ParseError("unknown point recipe '" + name + "'");
    return it->second(params);
}

void register_core_recipes() {
    register_recipe("alternating_blocks", make_alternating_blocks);
    register_recipe("blocks", make_blocks);
}

std::optional<std::uint64_t> first_disagreement(const Point& x, const Point& y,
                                                std::uint64_t horizon) {
    for (std::uint64_t i = 0; i < horizon; ++i)
        if (x.at(i) != y.at(i)) return i;
    return std::nullopt;
}

Rat rho(const Point& x, const Point& y, std::uint64_t horizon) {
    if (horizon < 1) throw PreconditionError("rho horizon must be >= 1");
    auto k = first_disagreement(x, y, horizon);
    if (!k) return Rat(0);
    return pow2(-static_cast<long>(*k));
}

} // namespace genericlab
