#include "genericlab/word.hpp"

#include "genericlab/errors.hpp"

namespace genericlab {

Word Word::from_digits(const std::string& text) {
    std::vector<Symbol> out;
    out.reserve(text.size());
    for (char c : text) {
        if (c >= '0' && c <= '9') out.push_back(static_cast<Symbol>(c - '0'));
        else if (c == 'x') out.push_back(kPlaceholder);
        else throw ParseError(std::string("bad word character '") + c + "'");
    }
    return Word(std::move(out));
}

void Word::append(const Word& w) {
    syms_.insert(syms_.end(), w.syms_.begin(), w.syms_.end());
}

bool Word::has_placeholder() const {
    for (Symbol s : syms_)
        if (s == kPlaceholder) return true;
    return false;
}

Word Word::sub(std::size_t pos, std::size_t len) const {
    if (pos + len > syms_.size()) throw PreconditionError("subword out of range");
    return Word(std::vector<Symbol>(syms_.begin() + pos, syms_.begin() + pos + len));
}

std::string Word::to_digits() const {
    std::string out;
    out.reserve(syms_.size());
    for (Symbol s : syms_) {
        if (s == kPlaceholder) out.push_back('x');
        else if (s >= 0 && s <= 9) out.push_back(static_cast<char>('0' + s));
        else {
            // wide symbols render bracketed so the string stays unambiguous
            out += "[" + std::to_string(s) + "]";
        }
    }
    return out;
}

Word concat(const Word& u, const Word& v) {
    Word out = u;
    out.append(v);
    return out;
}

Word concat_power(const Word& u, std::uint64_t k) {
    Word out;
    std::vector<Symbol> buf;
    buf.reserve(u.size() * k);
    for (std::uint64_t i = 0; i < k; ++i)
        buf.insert(buf.end(), u.symbols().begin(), u.symbols().end());
    return Word(std::move(buf));
}

std::set<Word> subword_set(const Word& w, std::size_t len) {
    std::set<Word> out;
    if (len == 0) throw PreconditionError("subword length must be positive");
    if (len > w.size()) return out;
    for (std::size_t i = 0; i + len <= w.size(); ++i) out.insert(w.sub(i, len));
    return out;
}

bool is_suffix(const Word& u, const Word& v) {
    if (u.size() > v.size()) return false;
    const std::size_t off = v.size() - u.size();
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] != v[off + i]) return false;
    return true;
}

bool is_prefix(const Word& u, const Word& v) {
    if (u.size() > v.size()) return false;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] != v[i]) return false;
    return true;
}

std::size_t primary_period(const Word& w) {
    const std::size_t n = w.size();
    if (n == 0) return 0;
    std::vector<std::size_t> fail(n + 1, 0);
    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i) {
        while (k > 0 && w[i] != w[k]) k = fail[k];
        if (w[i] == w[k]) ++k;
        fail[i + 1] = k;
    }
    const std::size_t p = n - fail[n];
    return (n % p == 0) ? p : n;
}

std::uint64_t word_hash(const Word& w) {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (Symbol s : w.symbols()) {
        auto u = static_cast<std::uint32_t>(s);
        for (int b = 0; b < 4; ++b) {
            h ^= (u >> (8 * b)) & 0xffu;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

} // namespace genericlab
