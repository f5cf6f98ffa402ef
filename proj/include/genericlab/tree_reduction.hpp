#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "genericlab/measure.hpp"
#include "genericlab/point.hpp"
#include "genericlab/rational.hpp"

namespace genericlab {

// n-th prime with p(0) = 2.
Symbol nth_prime(std::size_t n);

// Fixed pairing bijection omega x omega -> omega (Cantor diagonal).
std::uint64_t pairing(std::uint64_t n, std::uint64_t i);

// n-th positive integer divisible by at least two different primes:
// q(0) = 6, q(1) = 10, q(2) = 12, ...
Symbol composite_q(std::size_t n);

// Finite prefix-closed set of finite integer sequences.
struct TreeOnOmega {
    std::set<std::vector<Symbol>> nodes;

    static TreeOnOmega from_nodes(std::vector<std::vector<Symbol>> nodes); // validates closure
    bool contains(const std::vector<Symbol>& node) const { return nodes.count(node) > 0; }
};

// Deterministic enumeration t(1), t(2), ... of short integer sequences,
// ordered by (length, lexicographic): t(1) is the empty sequence, then all
// length-1 sequences with entries < max_entry, and so on up to max_len.
struct NodeEnumeration {
    Symbol max_entry = 8;
    int max_len = 4;
    std::vector<std::vector<Symbol>> nodes; // 0-based storage for t(i+1)

    static NodeEnumeration standard(Symbol max_entry = 8, int max_len = 4);
    const std::vector<Symbol>& at(std::size_t i) const; // 1-based
    std::size_t count() const { return nodes.size(); }
};

// Periodic word attached to a finite sequence s: geometric runs of the primes
// p(pairing(s(i), i)) followed by a run of ones.
Word node_periodic_word(const std::vector<Symbol>& s);

// Measure attached to s: 2^{-|s|} on the all-ones point plus 2^{-(i+1)} on
// each constant prime point.
DiscreteMeasure node_measure(const std::vector<Symbol>& s, std::uint64_t horizon);

struct TreeStage {
    int n = 0;
    std::uint64_t a = 0, b = 0;
    std::uint64_t length = 0;    // a*b
    std::uint64_t end = 0;       // ell_n
    bool node_block = false;     // even stage whose node lies in the tree
    std::vector<Symbol> node;    // the enumerated node consulted (even stages)
};

struct TreePointResult {
    Point x;
    std::vector<TreeStage> stages;
    std::uint64_t total_length = 0;
};

// Stagewise coding of a tree into a single point: odd stages write zero
// blocks, even stage 2m writes b copies of the node word when t(m) lies in
// the tree and a constant composite block otherwise. Prefixes up to stage 2m
// depend only on membership of t(1)..t(m).
TreePointResult tree_point(const TreeOnOmega& tree, int stages, const NodeEnumeration& enumeration,
                           std::uint64_t length_cap = 80'000'000);

} // namespace genericlab
