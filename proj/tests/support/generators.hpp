#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "stutter/fps.hpp"
#include "stutter/lts.hpp"
#include "stutter/paths.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Random path over `states` states and `actions` actions (id 0 is tau).
/// Self-steps are drawn often so stuttering actually occurs.
inline stutter::Path path(Rng& rng, std::size_t states, std::size_t actions, std::size_t max_len) {
    stutter::Path p(static_cast<stutter::StateId>(below(rng, states)));
    std::size_t len = below(rng, max_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
        stutter::Action a{static_cast<std::uint32_t>(chance(rng, 0.5) ? 0 : below(rng, actions))};
        stutter::StateId t = chance(rng, 0.4) ? stutter::last(p) : static_cast<stutter::StateId>(below(rng, states));
        p.push(a, t);
    }
    return p;
}

inline stutter::StateMap state_map(Rng& rng, std::size_t from, std::size_t to) {
    stutter::StateMap f(from);
    for (auto& v : f) v = static_cast<stutter::StateId>(below(rng, to));
    return f;
}

inline stutter::StateMap permutation(Rng& rng, std::size_t n) {
    stutter::StateMap f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = static_cast<stutter::StateId>(i);
    std::shuffle(f.begin(), f.end(), rng);
    return f;
}

inline stutter::Alphabet alphabet(std::size_t visible) {
    stutter::Alphabet a;
    for (std::size_t i = 0; i < visible; ++i) a.intern(std::string(1, static_cast<char>('a' + i)));
    return a;
}

/// Random LTS with 1..max_states states and 1..max_visible visible actions.
inline stutter::Lts lts(Rng& rng, std::size_t max_states = 8, std::size_t max_visible = 3, double max_tau = 0.5) {
    std::size_t n = 1 + below(rng, max_states);
    std::size_t vis = 1 + below(rng, max_visible);
    double tau_density = std::uniform_real_distribution<double>(0.0, max_tau)(rng);
    double vis_density = std::uniform_real_distribution<double>(0.05, 0.3)(rng);
    std::vector<stutter::Transition> ts;
    for (stutter::StateId s = 0; s < n; ++s) {
        for (stutter::StateId t = 0; t < n; ++t) {
            if (chance(rng, tau_density / static_cast<double>(n) * 2)) ts.push_back({s, stutter::Action::tau(), t});
            for (std::uint32_t a = 1; a <= vis; ++a) {
                if (chance(rng, vis_density / static_cast<double>(n) * 2)) ts.push_back({s, stutter::Action{a}, t});
            }
        }
    }
    return stutter::Lts(n, alphabet(vis), std::move(ts));
}

/// Random FPS: each state is a stop state or spreads mass 1 over a few
/// (action, target) pairs with denominators dividing `den`.
inline stutter::Fps fps(Rng& rng, std::size_t max_states = 6, std::size_t max_visible = 2, unsigned den = 4,
                        bool self_loops_only_cycles = false) {
    std::size_t n = 1 + below(rng, max_states);
    std::size_t vis = 1 + below(rng, max_visible);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
    std::vector<stutter::ProbTransition> ts;
    for (stutter::StateId s = 0; s < n; ++s) {
        if (chance(rng, 0.25)) continue;
        // split den units over up to 3 distinct (action, target) pairs
        std::map<std::pair<std::uint32_t, stutter::StateId>, unsigned> units;
        unsigned left = den;
        while (left > 0) {
            unsigned take = units.size() >= 2 ? left : 1 + static_cast<unsigned>(below(rng, left));
            std::uint32_t a = chance(rng, 0.5) ? 0 : static_cast<std::uint32_t>(1 + below(rng, vis));
            stutter::StateId t;
            if (self_loops_only_cycles) {
                // targets at or after s; silent cycles reduce to self-loops
                t = static_cast<stutter::StateId>(s + below(rng, n - s));
            } else {
                t = static_cast<stutter::StateId>(below(rng, n));
            }
            units[{a, t}] += take;
            left -= take;
        }
        for (const auto& [key, u] : units)
            ts.push_back({s, stutter::Action{key.first}, key.second, stutter::Rational(u, den)});
    }
    for (auto& t : ts) t.prob.canonicalize();
    return stutter::Fps(std::move(names), alphabet(vis), std::move(ts));
}

}  // namespace gen
