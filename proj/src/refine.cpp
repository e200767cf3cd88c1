#include "stutter/refine.hpp"

#include <cassert>
#include <map>
#include <set>

namespace stutter {

namespace {

Partition refine_step(const Lts& lts, const Partition& part, Semantics sem, const TauClosure& closure,
                      SignatureScope scope) {
    std::vector<std::vector<std::uint64_t>> keys(lts.num_states());
    for (StateId x = 0; x < lts.num_states(); ++x) {
        keys[x] = signature_automaton(lts, part, x, sem, closure, scope).encoding();
    }
    return Partition::from_keys(std::span<const std::vector<std::uint64_t>>(keys));
}

}  // namespace

std::vector<Partition> refine_rounds(const Lts& lts, Semantics sem, SignatureScope scope) {
    TauClosure closure(lts);
    std::vector<Partition> rounds{Partition::single_block(lts.num_states())};
    while (true) {
        Partition next = refine_step(lts, rounds.back(), sem, closure, scope);
        if (next.num_blocks() == rounds.back().num_blocks()) break;
        rounds.push_back(std::move(next));
    }
    return rounds;
}

Partition refine(const Lts& lts, Semantics sem, SignatureScope scope) { return refine_rounds(lts, sem, scope).back(); }

Partition classical_partition(const Lts& lts, Semantics sem) {
    const std::size_t n = lts.num_states();
    auto closure = weak_closure(lts);
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));

    auto related = [&](StateId a, StateId b) { return static_cast<bool>(rel[a][b]); };
    // Can y answer x -a-> x2?
    auto answers = [&](StateId x, Action a, StateId x2, StateId y) {
        if (a.is_tau() && related(x2, y)) return true;
        for (StateId y1 = 0; y1 < n; ++y1) {
            if (!closure[y][y1]) continue;
            if ((sem == Semantics::branching || sem == Semantics::eta) && !related(x, y1)) continue;
            for (const auto& st : lts.out(y1)) {
                if (st.action != a) continue;
                switch (sem) {
                    case Semantics::branching:
                    case Semantics::delay:
                        if (related(x2, st.target)) return true;
                        break;
                    case Semantics::weak:
                    case Semantics::eta:
                        for (StateId y2 = 0; y2 < n; ++y2) {
                            if (closure[st.target][y2] && related(x2, y2)) return true;
                        }
                        break;
                }
            }
        }
        // weak silent steps may also be answered by staying put or by tau*
        if (sem == Semantics::weak && a.is_tau()) {
            for (StateId y1 = 0; y1 < n; ++y1) {
                if (closure[y][y1] && related(x2, y1)) return true;
            }
        }
        return false;
    };
    auto transfers = [&](StateId x, StateId y) {
        for (const auto& st : lts.out(x)) {
            if (!answers(x, st.action, st.target, y)) return false;
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId x = 0; x < n; ++x) {
            for (StateId y = x + 1; y < n; ++y) {
                if (!rel[x][y]) continue;
                if (!transfers(x, y) || !transfers(y, x)) {
                    rel[x][y] = rel[y][x] = false;
                    changed = true;
                }
            }
        }
    }
    return Partition::from_keys(std::span<const std::vector<bool>>(rel));
}

bool equivalent(const Lts& lts, StateId x, StateId y, Semantics sem, SignatureScope scope) {
    if (x >= lts.num_states() || y >= lts.num_states()) throw std::out_of_range("unknown state");
    Partition part = refine(lts, sem, scope);
    assert(scope == SignatureScope::full_paths || part == classical_partition(lts, sem));
    return part.same_block(x, y);
}

std::optional<Distinction> distinguish(const Lts& lts, StateId x, StateId y, Semantics sem, SignatureScope scope) {
    auto rounds = refine_rounds(lts, sem, scope);
    if (rounds.back().same_block(x, y)) return std::nullopt;
    TauClosure closure(lts);
    // last round that still groups x and y; its signatures tell them apart
    std::size_t r = 0;
    while (r + 1 < rounds.size() && rounds[r + 1].same_block(x, y)) ++r;
    auto sx = signature_automaton(lts, rounds[r], x, sem, closure, scope);
    auto sy = signature_automaton(lts, rounds[r], y, sem, closure, scope);
    auto w = distinguishing_word(sx, sy);
    assert(w.has_value());
    return Distinction{rounds[r], *w, sx.accepts(*w)};
}

std::string render_word(const SymbolWord& w, const Partition& part, const Lts& lts) {
    auto block = [&](BlockId b) {
        std::string s = "{";
        for (StateId m : part.block(b)) {
            if (s.size() > 1) s += ',';
            s += lts.name(m);
        }
        return s + "}";
    };
    std::string out;
    for (Symbol sym : w) {
        if (!out.empty()) out += ' ';
        if (is_start_symbol(sym)) {
            out += block(symbol_block(sym));
        } else {
            out += lts.alphabet().label(symbol_action(sym));
            out += ' ';
            out += block(symbol_block(sym));
        }
    }
    return out;
}

Quotient quotient(const Lts& lts, const Partition& part) {
    std::vector<Transition> ts;
    for (const auto& t : lts.transitions()) {
        BlockId s = part.block_of(t.source);
        BlockId d = part.block_of(t.target);
        if (t.action.is_tau() && s == d) continue;
        ts.push_back(Transition{s, t.action, d});
    }
    Lts q(part.num_blocks(), lts.alphabet(), std::move(ts), part.block_of(lts.initial()));
    std::vector<std::string> names;
    for (const auto& b : part.blocks()) {
        std::string name;
        for (StateId m : b) {
            if (!name.empty()) name += '|';
            name += lts.name(m);
        }
        names.push_back(std::move(name));
    }
    q.set_state_names(std::move(names));
    return Quotient{std::move(q), part};
}

Quotient minimize(const Lts& lts, Semantics sem, SignatureScope scope) {
    return quotient(lts, refine(lts, sem, scope));
}

}  // namespace stutter
