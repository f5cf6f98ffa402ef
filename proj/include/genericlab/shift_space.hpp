#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>

#include "genericlab/word.hpp"

namespace genericlab {

// Membership-test view of a shift space: either a full shift (over all
// nonnegative integers or a declared finite alphabet) or a space described by
// a language oracle closed under subwords.
class ShiftSpace {
public:
    static ShiftSpace full_shift();
    static ShiftSpace full_shift(std::set<Symbol> alphabet);
    static ShiftSpace language_generated(std::string name,
                                         std::function<bool(const Word&)> contains);

    bool is_full_shift() const { return !language_; }
    bool symbol_ok(Symbol s) const;
    bool contains_word(const Word& w) const;
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::optional<std::set<Symbol>> alphabet_;
    std::function<bool(const Word&)> language_;
};

} // namespace genericlab
