#include "genericlab/shift_space.hpp"

namespace genericlab {

ShiftSpace ShiftSpace::full_shift() {
    ShiftSpace s;
    s.name_ = "full-shift";
    return s;
}

ShiftSpace ShiftSpace::full_shift(std::set<Symbol> alphabet) {
    ShiftSpace s;
    s.name_ = "full-shift";
    s.alphabet_ = std::move(alphabet);
    return s;
}

ShiftSpace ShiftSpace::language_generated(std::string name,
                                          std::function<bool(const Word&)> contains) {
    ShiftSpace s;
    s.name_ = std::move(name);
    s.language_ = std::move(contains);
    return s;
}

bool ShiftSpace::symbol_ok(Symbol s) const {
    if (s < 0) return false;
    if (alphabet_) return alphabet_->count(s) > 0;
    return true;
}

bool ShiftSpace::contains_word(const Word& w) const {
    if (language_) return language_(w);
    for (Symbol s : w.symbols())
        if (!symbol_ok(s)) return false;
    return true;
}

} // namespace genericlab
