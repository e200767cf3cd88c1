#include "stutter/signature.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace stutter {

SymbolWord encode_image(const Path& p, const Partition& part) {
    SymbolWord w{start_symbol(part.block_of(p.start()))};
    BlockId cur = part.block_of(p.start());
    for (const auto& st : p.steps()) {
        BlockId next = part.block_of(st.target);
        if (!(st.action.is_tau() && next == cur)) w.push_back(step_symbol(st.action, next));
        cur = next;
    }
    return w;
}

std::uint32_t SymbolNfa::add_node(bool accept) {
    edges.emplace_back();
    epsilon.emplace_back();
    accepting.push_back(accept);
    return static_cast<std::uint32_t>(edges.size() - 1);
}

namespace {

using NodeSet = std::vector<std::uint32_t>;

NodeSet epsilon_closure(const SymbolNfa& nfa, NodeSet set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    std::vector<bool> in(nfa.edges.size(), false);
    for (auto n : set) in[n] = true;
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (auto m : nfa.epsilon[set[i]]) {
            if (!in[m]) {
                in[m] = true;
                set.push_back(m);
            }
        }
    }
    std::sort(set.begin(), set.end());
    return set;
}

struct Dfa {
    std::vector<std::map<Symbol, std::uint32_t>> next;
    std::vector<bool> accepting;
};

Dfa determinize(const SymbolNfa& nfa) {
    Dfa dfa;
    std::map<NodeSet, std::uint32_t> ids;
    std::vector<NodeSet> sets;
    auto intern = [&](NodeSet s) {
        auto [it, inserted] = ids.try_emplace(s, static_cast<std::uint32_t>(sets.size()));
        if (inserted) {
            bool acc = std::any_of(s.begin(), s.end(), [&](auto n) { return nfa.accepting[n]; });
            sets.push_back(std::move(s));
            dfa.next.emplace_back();
            dfa.accepting.push_back(acc);
        }
        return it->second;
    };
    intern(epsilon_closure(nfa, {0}));
    for (std::size_t d = 0; d < sets.size(); ++d) {
        std::map<Symbol, NodeSet> moves;
        for (auto n : sets[d]) {
            for (const auto& e : nfa.edges[n]) moves[e.label].push_back(e.target);
        }
        for (auto& [sym, targets] : moves) {
            std::uint32_t t = intern(epsilon_closure(nfa, std::move(targets)));
            dfa.next[d][sym] = t;
        }
    }
    return dfa;
}

// Moore refinement. Missing edges go to an implicit rejecting sink; every
// state here is co-reachable from an accepting state, so none equals the sink.
std::vector<std::uint32_t> minimal_classes(const Dfa& dfa) {
    const std::size_t n = dfa.next.size();
    std::vector<std::uint32_t> cls(n);
    for (std::size_t s = 0; s < n; ++s) cls[s] = dfa.accepting[s] ? 1 : 0;
    std::size_t count = 0;
    while (true) {
        std::map<std::vector<std::uint64_t>, std::uint32_t> keys;
        std::vector<std::uint32_t> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::uint64_t> key{cls[s]};
            for (const auto& [sym, t] : dfa.next[s]) {
                key.push_back(sym);
                key.push_back(cls[t]);
            }
            auto [it, _] = keys.try_emplace(std::move(key), static_cast<std::uint32_t>(keys.size()));
            next[s] = it->second;
        }
        cls = std::move(next);
        if (keys.size() == count) break;
        count = keys.size();
    }
    return cls;
}

// Drops states from which no accepting state is reachable.
std::vector<bool> live_states(const Dfa& dfa) {
    const std::size_t n = dfa.next.size();
    std::vector<bool> live = dfa.accepting;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (live[s]) continue;
            for (const auto& [sym, t] : dfa.next[s]) {
                if (live[t]) {
                    live[s] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    return live;
}

}  // namespace

SignatureAutomaton SignatureAutomaton::from_nfa(const SymbolNfa& nfa) {
    Dfa dfa = determinize(nfa);
    auto live = live_states(dfa);
    for (auto& m : dfa.next) std::erase_if(m, [&](const auto& kv) { return !live[kv.second]; });
    auto cls = minimal_classes(dfa);

    SignatureAutomaton out;
    if (!live[0]) {
        // empty language: a single rejecting state
        out.edges_.emplace_back();
        out.accepting_.push_back(false);
        out.encoding_ = {0, 0};
        return out;
    }
    std::map<std::uint32_t, std::uint32_t> canon;  // class -> canonical id
    std::vector<std::uint32_t> rep;                // canonical id -> some dfa state
    std::deque<std::uint32_t> queue;
    canon[cls[0]] = 0;
    rep.push_back(0);
    queue.push_back(0);
    while (!queue.empty()) {
        std::uint32_t c = queue.front();
        queue.pop_front();
        std::uint32_t d = rep[c];
        out.edges_.emplace_back();
        out.accepting_.push_back(dfa.accepting[d]);
        for (const auto& [sym, t] : dfa.next[d]) {  // std::map iterates in symbol order
            auto [it, inserted] = canon.try_emplace(cls[t], static_cast<std::uint32_t>(rep.size()));
            if (inserted) {
                rep.push_back(t);
                queue.push_back(it->second);
            }
            out.edges_[c].push_back(Edge{sym, it->second});
        }
    }
    for (std::size_t s = 0; s < out.edges_.size(); ++s) {
        out.encoding_.push_back(out.accepting_[s] ? 1 : 0);
        out.encoding_.push_back(out.edges_[s].size());
        for (const auto& e : out.edges_[s]) {
            out.encoding_.push_back(e.label);
            out.encoding_.push_back(e.target);
        }
    }
    return out;
}

bool SignatureAutomaton::accepts(const SymbolWord& w) const {
    std::uint32_t s = 0;
    for (Symbol sym : w) {
        auto it = std::find_if(edges_[s].begin(), edges_[s].end(), [&](const Edge& e) { return e.label == sym; });
        if (it == edges_[s].end()) return false;
        s = it->target;
    }
    return accepting_[s];
}

std::set<SymbolWord> SignatureAutomaton::words(std::size_t max_length) const {
    std::set<SymbolWord> out;
    std::vector<std::pair<std::uint32_t, SymbolWord>> stack{{0, {}}};
    while (!stack.empty()) {
        auto [s, w] = std::move(stack.back());
        stack.pop_back();
        if (accepting_[s]) out.insert(w);
        if (w.size() == max_length) continue;
        for (const auto& e : edges_[s]) {
            SymbolWord next = w;
            next.push_back(e.label);
            stack.emplace_back(e.target, std::move(next));
        }
    }
    return out;
}

bool SignatureAutomaton::is_finite() const {
    // acyclic iff finite, since every state is live
    std::vector<int> colour(edges_.size(), 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
    colour[0] = 1;
    while (!stack.empty()) {
        auto& [s, i] = stack.back();
        if (i == edges_[s].size()) {
            colour[s] = 2;
            stack.pop_back();
            continue;
        }
        std::uint32_t t = edges_[s][i++].target;
        if (colour[t] == 1) return false;
        if (colour[t] == 0) {
            colour[t] = 1;
            stack.emplace_back(t, 0);
        }
    }
    return true;
}

std::uint64_t SignatureAutomaton::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t v : encoding_) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

std::optional<SymbolWord> distinguishing_word(const SignatureAutomaton& a, const SignatureAutomaton& b) {
    constexpr std::uint32_t dead = 0xffffffffu;
    using Pair = std::pair<std::uint32_t, std::uint32_t>;
    std::map<Pair, std::pair<Pair, Symbol>> parent;
    std::deque<Pair> queue{{0, 0}};
    parent[{0, 0}] = {{dead, dead}, 0};
    auto acc = [](const SignatureAutomaton& m, std::uint32_t s) { return s != dead && m.accepting(s); };
    auto step = [](const SignatureAutomaton& m, std::uint32_t s, Symbol sym) {
        if (s == dead) return dead;
        for (const auto& e : m.edges(s)) {
            if (e.label == sym) return e.target;
        }
        return dead;
    };
    while (!queue.empty()) {
        Pair cur = queue.front();
        queue.pop_front();
        if (acc(a, cur.first) != acc(b, cur.second)) {
            SymbolWord w;
            for (Pair p = cur; parent[p].first.first != dead || parent[p].first.second != dead;
                 p = parent[p].first)
                w.push_back(parent[p].second);
            std::reverse(w.begin(), w.end());
            return w;
        }
        std::set<Symbol> labels;
        if (cur.first != dead)
            for (const auto& e : a.edges(cur.first)) labels.insert(e.label);
        if (cur.second != dead)
            for (const auto& e : b.edges(cur.second)) labels.insert(e.label);
        for (Symbol sym : labels) {
            Pair nxt{step(a, cur.first, sym), step(b, cur.second, sym)};
            if (parent.try_emplace(nxt, std::make_pair(cur, sym)).second) queue.push_back(nxt);
        }
    }
    return std::nullopt;
}

namespace {

enum Phase : std::uint32_t { lead = 0, trail = 1, entry = 2 };

// Layered copy accepting the words of `nfa` with at most `max_length` symbols.
SymbolNfa truncate(const SymbolNfa& nfa, std::size_t max_length) {
    const auto n = static_cast<std::uint32_t>(nfa.edges.size());
    SymbolNfa out;
    for (std::size_t k = 0; k <= max_length; ++k)
        for (std::uint32_t v = 0; v < n; ++v) out.add_node(nfa.accepting[v]);
    for (std::uint32_t k = 0; k <= max_length; ++k) {
        for (std::uint32_t v = 0; v < n; ++v) {
            std::uint32_t from = k * n + v;
            for (auto m : nfa.epsilon[v]) out.epsilon[from].push_back(k * n + m);
            if (k == max_length) continue;
            for (const auto& e : nfa.edges[v]) out.edges[from].push_back({e.label, (k + 1) * n + e.target});
        }
    }
    return out;
}

}  // namespace

TauClosure::TauClosure(const Lts& lts) : reach(lts.num_states()) {
    auto rel = weak_closure(lts);
    for (std::size_t s = 0; s < rel.size(); ++s) {
        for (std::size_t t = 0; t < rel.size(); ++t) {
            if (rel[s][t]) reach[s].push_back(static_cast<StateId>(t));
        }
    }
}

SignatureAutomaton signature_automaton(const Lts& lts, const Partition& part, StateId x, Semantics sem,
                                       const TauClosure& closure, SignatureScope scope) {
    // Nodes are (state, phase) configurations, discovered on demand from x.
    SymbolNfa nfa;
    nfa.add_node(false);  // before the start symbol
    const std::uint32_t sink = nfa.add_node(true);
    std::map<std::pair<StateId, Phase>, std::uint32_t> ids;
    std::vector<std::pair<StateId, Phase>> pending;
    auto node = [&](StateId s, Phase ph) {
        auto [it, inserted] = ids.try_emplace({s, ph}, 0);
        if (inserted) {
            it->second = nfa.add_node(true);
            pending.emplace_back(s, ph);
        }
        return it->second;
    };
    auto B = [&](StateId s) { return part.block_of(s); };
    auto edge = [&](std::uint32_t from, Symbol sym, std::uint32_t to) { nfa.edges[from].push_back({sym, to}); };

    // explicit silent steps, collapsing those that stay inside a block
    auto tau_steps = [&](StateId s, Phase ph) {
        std::uint32_t from = node(s, ph);
        for (const auto& st : lts.out(s)) {
            if (!st.action.is_tau()) continue;
            std::uint32_t to = node(st.target, ph);
            if (B(st.target) == B(s))
                nfa.epsilon[from].push_back(to);
            else
                edge(from, step_symbol(st.action, B(st.target)), to);
        }
    };

    auto expand = [&](StateId s, Phase ph) {
        std::uint32_t from = node(s, ph);
        switch (sem) {
            case Semantics::branching:
                tau_steps(s, lead);
                for (const auto& st : lts.out(s)) {
                    if (!st.action.is_tau()) edge(from, step_symbol(st.action, B(st.target)), sink);
                }
                break;
            case Semantics::weak: {
                std::set<Symbol> emitted;
                for (StateId z : closure.reach[s]) {
                    for (const auto& st : lts.out(z)) {
                        for (StateId end : closure.reach[st.target]) {
                            if (st.action.is_tau() && B(end) == B(s)) continue;
                            emitted.insert(step_symbol(st.action, B(end)));
                        }
                    }
                }
                for (Symbol sym : emitted) edge(from, sym, sink);
                break;
            }
            case Semantics::eta: {
                tau_steps(s, lead);
                std::set<Symbol> emitted;
                for (const auto& st : lts.out(s)) {
                    for (StateId end : closure.reach[st.target]) {
                        if (st.action.is_tau() && B(end) == B(s)) continue;
                        emitted.insert(step_symbol(st.action, B(end)));
                    }
                }
                for (Symbol sym : emitted) edge(from, sym, sink);
                break;
            }
            case Semantics::delay:
                if (ph == trail) {
                    tau_steps(s, trail);
                    break;
                }
                for (StateId z : closure.reach[s]) {
                    for (const auto& st : lts.out(z)) {
                        std::uint32_t to = node(st.target, trail);
                        if (st.action.is_tau() && B(st.target) == B(s))
                            nfa.epsilon[from].push_back(to);
                        else
                            edge(from, step_symbol(st.action, B(st.target)), to);
                    }
                }
                break;
        }
    };

    Phase first = (sem == Semantics::branching || sem == Semantics::eta) ? lead : entry;
    edge(0, start_symbol(B(x)), node(x, first));
    while (!pending.empty()) {
        auto [s, ph] = pending.back();
        pending.pop_back();
        expand(s, ph);
    }
    // start symbol plus at most one step symbol
    if (scope == SignatureScope::one_step) return SignatureAutomaton::from_nfa(truncate(nfa, 2));
    return SignatureAutomaton::from_nfa(nfa);
}

SignatureAutomaton signature_automaton(const Lts& lts, const Partition& part, StateId x, Semantics sem,
                                       SignatureScope scope) {
    return signature_automaton(lts, part, x, sem, TauClosure(lts), scope);
}

}  // namespace stutter
