#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace genericlab {

// Alphabet letters are nonnegative integers. kPlaceholder is the one reserved
// negative value, used by staged word constructions whose cells are filled in
// later; it never appears inside a Point.
using Symbol = std::int32_t;
inline constexpr Symbol kPlaceholder = -1;

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Symbol> symbols) : syms_(std::move(symbols)) {}

    // One char per symbol: '0'..'9' and 'x' for the placeholder.
    static Word from_digits(const std::string& text);

    std::size_t size() const { return syms_.size(); }
    bool empty() const { return syms_.empty(); }
    Symbol operator[](std::size_t i) const { return syms_[i]; }
    const std::vector<Symbol>& symbols() const { return syms_; }
    void push_back(Symbol s) { syms_.push_back(s); }
    void append(const Word& w);
    bool has_placeholder() const;

    Word sub(std::size_t pos, std::size_t len) const;
    std::string to_digits() const;

    friend bool operator==(const Word& a, const Word& b) { return a.syms_ == b.syms_; }
    friend bool operator!=(const Word& a, const Word& b) { return a.syms_ != b.syms_; }
    friend bool operator<(const Word& a, const Word& b) { return a.syms_ < b.syms_; }

private:
    std::vector<Symbol> syms_;
};

Word concat(const Word& u, const Word& v);
Word concat_power(const Word& u, std::uint64_t k);

// All distinct factors of w of the given length; empty set when len > |w|.
std::set<Word> subword_set(const Word& w, std::size_t len);

bool is_suffix(const Word& u, const Word& v); // u a suffix of v
bool is_prefix(const Word& u, const Word& v);

// Smallest p such that w is (a prefix of) a p-periodic stream; |w| if aperiodic.
std::size_t primary_period(const Word& w);

std::uint64_t word_hash(const Word& w);

} // namespace genericlab
