#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "stutter/lts.hpp"
#include "stutter/partition.hpp"

namespace stutter {

/// Signature words are a block symbol for the start state followed by
/// (action, block) pair symbols, one per non-stuttering step of the image path.
using Symbol = std::uint64_t;
using SymbolWord = std::vector<Symbol>;

constexpr Symbol start_symbol(BlockId b) { return (Symbol{1} << 63) | b; }
constexpr Symbol step_symbol(Action a, BlockId b) { return (Symbol{a.id} << 32) | b; }
constexpr bool is_start_symbol(Symbol s) { return (s >> 63) != 0; }
constexpr BlockId symbol_block(Symbol s) { return static_cast<BlockId>(s & 0xffffffffu); }
constexpr Action symbol_action(Symbol s) { return Action{static_cast<std::uint32_t>((s >> 32) & 0x7fffffffu)}; }

/// Encodes the image of `p` under the block map with silent self-steps removed.
SymbolWord encode_image(const Path& p, const Partition& part);

/// Nondeterministic automaton with epsilon moves. Node 0 is initial.
struct SymbolNfa {
    struct Edge {
        Symbol label;
        std::uint32_t target;
    };
    std::vector<std::vector<Edge>> edges;
    std::vector<std::vector<std::uint32_t>> epsilon;
    std::vector<bool> accepting;

    std::uint32_t add_node(bool accept);
};

/// Minimal deterministic automaton numbered canonically: breadth-first from
/// the initial state (state 0), successors taken in increasing symbol order.
/// Equal languages give identical automata.
class SignatureAutomaton {
public:
    struct Edge {
        Symbol label;
        std::uint32_t target;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    static SignatureAutomaton from_nfa(const SymbolNfa& nfa);

    std::size_t num_states() const { return edges_.size(); }
    const std::vector<Edge>& edges(std::uint32_t s) const { return edges_.at(s); }
    bool accepting(std::uint32_t s) const { return accepting_.at(s); }

    bool accepts(const SymbolWord& w) const;
    /// Accepted words of length at most `max_length`.
    std::set<SymbolWord> words(std::size_t max_length) const;
    bool is_finite() const;

    /// Flat canonical encoding; equal iff the languages are equal.
    const std::vector<std::uint64_t>& encoding() const { return encoding_; }
    /// FNV-1a over the canonical encoding.
    std::uint64_t hash() const;

    friend bool operator==(const SignatureAutomaton& a, const SignatureAutomaton& b) {
        return a.encoding_ == b.encoding_;
    }

private:
    std::vector<std::vector<Edge>> edges_;
    std::vector<bool> accepting_;
    std::vector<std::uint64_t> encoding_;
};

/// A shortest word in exactly one of the two languages, if any.
std::optional<SymbolWord> distinguishing_word(const SignatureAutomaton& a, const SignatureAutomaton& b);

/// Which block-image stutter classes of alpha(x) a signature keeps.
/// one_step keeps the classes with at most one step; these decide the
/// classical equivalences. full_paths keeps every class, which is the literal
/// path encoding; for eta and delay it can be strictly finer than the
/// classical notions because their explicit silent segments must then match
/// class by class.
enum class SignatureScope { one_step, full_paths };

/// Automaton for the set of block-image stutter classes of alpha(x).
SignatureAutomaton signature_automaton(const Lts& lts, const Partition& part, StateId x, Semantics sem,
                                       SignatureScope scope = SignatureScope::full_paths);
/// Per-state lists of the states reachable by zero or more silent steps.
struct TauClosure {
    explicit TauClosure(const Lts& lts);
    std::vector<std::vector<StateId>> reach;
};

/// Same, reusing a precomputed closure.
SignatureAutomaton signature_automaton(const Lts& lts, const Partition& part, StateId x, Semantics sem,
                                       const TauClosure& closure, SignatureScope scope = SignatureScope::full_paths);

}  // namespace stutter
