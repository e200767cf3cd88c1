#include "stutter/fps.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

namespace stutter {

Fps::Fps(std::vector<std::string> state_names, Alphabet alphabet, std::vector<ProbTransition> transitions)
    : names_(std::move(state_names)),
      alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)),
      out_(names_.size()) {
    std::sort(transitions_.begin(), transitions_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.source, a.action, a.target) < std::tie(b.source, b.action, b.target);
    });
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        const auto& t = transitions_[i];
        if (t.source >= names_.size() || t.target >= names_.size())
            throw ValidationError("transition endpoint out of range");
        if (t.action.id >= alphabet_.size()) throw ValidationError("transition action not in alphabet");
        if (t.prob <= 0 || t.prob > 1)
            throw ValidationError("probability " + format_rational(t.prob) + " of a transition from state '" +
                                  names_[t.source] + "' is outside (0,1]");
        if (i > 0 && std::tie(transitions_[i - 1].source, transitions_[i - 1].action, transitions_[i - 1].target) ==
                         std::tie(t.source, t.action, t.target))
            throw ValidationError("duplicate transition from state '" + names_[t.source] + "'");
        out_[t.source].push_back(t);
    }
    for (StateId s = 0; s < names_.size(); ++s) {
        Rational sum = row_sum(s);
        if (sum != 0 && sum != 1)
            throw ValidationError("outgoing probabilities of state '" + names_[s] + "' sum to " +
                                  format_rational(sum) + ", expected 0 or 1");
    }
}

StateId Fps::find_state(std::string_view name) const {
    for (std::size_t s = 0; s < names_.size(); ++s) {
        if (names_[s] == name) return static_cast<StateId>(s);
    }
    throw std::out_of_range("unknown state '" + std::string(name) + "'");
}

Rational Fps::prob(StateId s, Action a, StateId t) const {
    for (const auto& tr : out_.at(s)) {
        if (tr.action == a && tr.target == t) return tr.prob;
    }
    return 0;
}

Rational Fps::row_sum(StateId s) const {
    Rational sum = 0;
    for (const auto& tr : out_.at(s)) sum += tr.prob;
    return sum;
}

bool Fps::is_execution(const Path& p) const { return mu_p(*this, p) > 0; }

bool operator==(const Fps& a, const Fps& b) {
    if (a.names_ != b.names_ || a.transitions_.size() != b.transitions_.size()) return false;
    auto labelled = [](const Fps& f) {
        std::vector<std::tuple<StateId, std::string, StateId, Rational>> out;
        for (const auto& t : f.transitions_)
            out.emplace_back(t.source, t.action.is_tau() ? std::string() : f.alphabet_.label(t.action), t.target,
                             t.prob);
        std::sort(out.begin(), out.end());
        return out;
    };
    return labelled(a) == labelled(b);
}

Fps parse_fps(std::string_view text, const FpsOptions& options) {
    std::vector<std::string> names;
    auto state = [&](const std::string& name) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it != names.end()) return static_cast<StateId>(it - names.begin());
        names.push_back(name);
        return static_cast<StateId>(names.size() - 1);
    };
    Alphabet alphabet(options.tau_label);
    std::vector<ProbTransition> transitions;
    std::set<std::tuple<StateId, Action, StateId>> seen;

    std::size_t line_no = 0;
    for (std::size_t pos = 0; pos < text.size();) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string line(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream in(line);
        std::vector<std::string> tok;
        for (std::string t; in >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() == 1) {
            state(tok[0]);
            continue;
        }
        if (tok.size() != 4) throw ParseError(line_no, "expected 'source action probability target'");
        Rational p;
        try {
            p = parse_rational(tok[2]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        StateId src = state(tok[0]);
        Action a = tok[1] == options.tau_label ? Action::tau() : alphabet.intern(tok[1]);
        StateId dst = state(tok[3]);
        if (p <= 0 || p > 1) throw ParseError(line_no, "probability " + tok[2] + " outside (0,1]");
        if (!seen.insert({src, a, dst}).second) throw ParseError(line_no, "duplicate transition");
        transitions.push_back(ProbTransition{src, a, dst, p});
    }
    return Fps(std::move(names), std::move(alphabet), std::move(transitions));
}

std::string write_fps(const Fps& fps) {
    std::ostringstream out;
    for (const auto& n : fps.state_names()) out << n << '\n';
    for (const auto& t : fps.transitions()) {
        out << fps.name(t.source) << ' ' << fps.alphabet().label(t.action) << ' ' << format_rational(t.prob) << ' '
            << fps.name(t.target) << '\n';
    }
    return out.str();
}

Rational mu_p(const Fps& fps, const Path& p) {
    if (p.start() >= fps.num_states()) return 0;
    Rational w = 1;
    for (std::size_t i = 0; i < p.length(); ++i) {
        const auto& st = p.steps()[i];
        if (st.target >= fps.num_states()) return 0;
        w *= fps.prob(p.state_at(i), st.action, st.target);
        if (w == 0) return 0;
    }
    return w;
}

namespace {

void collect_hits(const Fps& fps, StateId x, Observation obs, const std::vector<bool>& targets, std::size_t depth,
                  bool first_only, std::vector<Path>& out) {
    std::function<void(Path&)> rec = [&](Path& p) {
        StateId cur = last(p);
        if (obs.is_tau() && targets[cur]) {
            out.push_back(p);
            if (first_only) return;
        }
        if (p.length() >= depth) return;
        for (const auto& t : fps.out(cur)) {
            if (t.action.is_tau()) {
                p.push(t.action, t.target);
                rec(p);
                p = p.prefix(p.length() - 1);
            } else if (t.action == obs && targets[t.target]) {
                out.push_back(p.extended(t.action, t.target));
            }
        }
    };
    Path p(x);
    rec(p);
    std::sort(out.begin(), out.end());
}

// Least nonnegative solution of u = T u + b over the states in `live`, where
// T holds the silent moves allowed by `keep`. States outside `live` get 0.
std::vector<Rational> least_solution(const Fps& fps, const std::vector<Rational>& contrib,
                                     const std::function<bool(StateId, StateId)>& keep) {
    const std::size_t n = fps.num_states();
    // live: states that reach a positive contribution through kept silent moves
    std::vector<bool> live(n, false);
    for (StateId s = 0; s < n; ++s) live[s] = contrib[s] > 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (StateId s = 0; s < n; ++s) {
            if (live[s]) continue;
            for (const auto& t : fps.out(s)) {
                if (t.action.is_tau() && keep(s, t.target) && live[t.target]) {
                    live[s] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    std::vector<StateId> idx;
    std::vector<std::size_t> pos(n, 0);
    for (StateId s = 0; s < n; ++s) {
        if (live[s]) {
            pos[s] = idx.size();
            idx.push_back(s);
        }
    }
    const std::size_t m = idx.size();
    // (I - T) u = b, augmented
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, 0));
    for (std::size_t r = 0; r < m; ++r) {
        StateId s = idx[r];
        a[r][r] = 1;
        a[r][m] = contrib[s];
        for (const auto& t : fps.out(s)) {
            if (t.action.is_tau() && keep(s, t.target) && live[t.target]) a[r][pos[t.target]] -= t.prob;
        }
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        while (piv < m && a[piv][c] == 0) ++piv;
        if (piv == m) throw std::logic_error("singular reachability system");
        std::swap(a[c], a[piv]);
        Rational inv = 1 / a[c][c];
        for (std::size_t k = c; k <= m; ++k) a[c][k] *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (std::size_t k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<Rational> u(n, 0);
    for (std::size_t r = 0; r < m; ++r) u[idx[r]] = a[r][m];
    return u;
}

}  // namespace

std::vector<Path> first_hit_set(const Fps& fps, StateId x, Observation obs, const std::vector<bool>& targets,
                                std::size_t depth) {
    std::vector<Path> out;
    collect_hits(fps, x, obs, targets, depth, true, out);
    return out;
}

std::vector<Path> hit_set(const Fps& fps, StateId x, Observation obs, const std::vector<bool>& targets,
                          std::size_t depth) {
    std::vector<Path> out;
    collect_hits(fps, x, obs, targets, depth, false, out);
    return out;
}

std::vector<Rational> reach_probabilities(const Fps& fps, Observation obs, const std::vector<bool>& targets) {
    const std::size_t n = fps.num_states();
    if (targets.size() != n) throw std::invalid_argument("target set size does not match state count");
    std::vector<Rational> contrib(n, 0);
    if (!obs.is_tau()) {
        for (StateId s = 0; s < n; ++s) {
            for (const auto& t : fps.out(s)) {
                if (t.action == obs && targets[t.target]) contrib[s] += t.prob;
            }
        }
        return least_solution(fps, contrib, [](StateId, StateId) { return true; });
    }
    for (StateId s = 0; s < n; ++s) {
        if (targets[s]) continue;
        for (const auto& t : fps.out(s)) {
            if (t.action.is_tau() && targets[t.target]) contrib[s] += t.prob;
        }
    }
    auto u = least_solution(fps, contrib, [&](StateId s, StateId t) { return !targets[s] && !targets[t]; });
    for (StateId s = 0; s < n; ++s) {
        if (targets[s]) u[s] = 1;
    }
    return u;
}

Rational prob_reach(const Fps& fps, StateId x, Observation obs, const std::vector<bool>& targets) {
    if (x >= fps.num_states()) throw std::out_of_range("unknown state");
    return reach_probabilities(fps, obs, targets)[x];
}

namespace {

std::vector<Observation> observations(const Fps& fps) {
    std::vector<Observation> obs{Action::tau()};
    for (auto a : fps.alphabet().visible()) obs.push_back(a);
    return obs;
}

std::vector<bool> block_mask(const Partition& part, BlockId b) {
    std::vector<bool> mask(part.num_states(), false);
    for (StateId s : part.block(b)) mask[s] = true;
    return mask;
}

}  // namespace

std::vector<ProbSignature> prob_signatures(const Fps& fps, const Partition& part) {
    std::vector<ProbSignature> sigs(fps.num_states());
    for (Observation obs : observations(fps)) {
        for (BlockId b = 0; b < part.num_blocks(); ++b) {
            auto u = reach_probabilities(fps, obs, block_mask(part, b));
            for (StateId s = 0; s < fps.num_states(); ++s) {
                if (u[s] != 0) sigs[s].emplace(std::make_pair(obs, b), u[s]);
            }
        }
    }
    return sigs;
}

std::vector<Partition> delay_refine_rounds(const Fps& fps) {
    std::vector<Partition> rounds{Partition::single_block(fps.num_states())};
    while (true) {
        const Partition& cur = rounds.back();
        auto sigs = prob_signatures(fps, cur);
        std::vector<std::pair<BlockId, ProbSignature>> keys;
        for (StateId s = 0; s < fps.num_states(); ++s) keys.emplace_back(cur.block_of(s), std::move(sigs[s]));
        Partition next = Partition::from_keys(std::span<const std::pair<BlockId, ProbSignature>>(keys));
        if (next.num_blocks() == cur.num_blocks()) break;
        rounds.push_back(std::move(next));
    }
    return rounds;
}

Partition delay_refine(const Fps& fps) { return delay_refine_rounds(fps).back(); }

bool is_delay_bisimulation(const Fps& fps, const Partition& part) {
    auto sigs = prob_signatures(fps, part);
    for (const auto& block : part.blocks()) {
        for (StateId s : block) {
            if (sigs[s] != sigs[block.front()]) return false;
        }
    }
    return true;
}

Partition brute_force_delay(const Fps& fps) {
    const std::size_t n = fps.num_states();
    if (n > brute_force_limit)
        throw std::length_error("brute-force search is limited to " + std::to_string(brute_force_limit) + " states");
    if (n == 0) return Partition::single_block(0);
    // restricted growth strings enumerate every set partition once
    std::vector<BlockId> rgs(n, 0);
    std::optional<Partition> best;
    while (true) {
        Partition cand = Partition::from_keys(std::span<const BlockId>(rgs));
        if ((!best || cand.num_blocks() < best->num_blocks()) && is_delay_bisimulation(fps, cand)) best = cand;
        // next restricted growth string
        std::size_t i = n - 1;
        while (i > 0) {
            BlockId max_prefix = *std::max_element(rgs.begin(), rgs.begin() + static_cast<std::ptrdiff_t>(i));
            if (rgs[i] <= max_prefix) break;
            --i;
        }
        if (i == 0) break;
        ++rgs[i];
        std::fill(rgs.begin() + static_cast<std::ptrdiff_t>(i) + 1, rgs.end(), 0);
    }
    return *best;  // the discrete partition always qualifies
}

FpsQuotient quotient_fps(const Fps& fps, const Partition& part) {
    const std::size_t n = fps.num_states();
    // exit[s][(a, B')]: probability of leaving s's block by a into B' after
    // silent moves that stay inside the block
    std::map<std::pair<Action, BlockId>, std::vector<Rational>> exits;
    for (Observation a : observations(fps)) {
        for (BlockId b = 0; b < part.num_blocks(); ++b) {
            std::vector<Rational> contrib(n, 0);
            bool any = false;
            for (StateId s = 0; s < n; ++s) {
                if (a.is_tau() && part.block_of(s) == b) continue;
                for (const auto& t : fps.out(s)) {
                    if (t.action == a && part.block_of(t.target) == b) {
                        contrib[s] += t.prob;
                        any = true;
                    }
                }
            }
            if (!any) continue;
            exits[{a, b}] = least_solution(
                fps, contrib, [&](StateId s, StateId t) { return part.block_of(s) == part.block_of(t); });
        }
    }
    std::vector<ProbTransition> ts;
    std::vector<std::string> names;
    for (BlockId b = 0; b < part.num_blocks(); ++b) {
        const auto& members = part.block(b);
        std::string name;
        for (StateId m : members) {
            if (!name.empty()) name += '|';
            name += fps.name(m);
        }
        names.push_back(std::move(name));
        for (const auto& [key, u] : exits) {
            for (StateId m : members) {
                if (u[m] != u[members.front()])
                    throw std::logic_error("members of block " + names.back() + " leave it with different probabilities");
            }
            if (u[members.front()] != 0) ts.push_back(ProbTransition{b, key.first, key.second, u[members.front()]});
        }
    }
    return FpsQuotient{Fps(std::move(names), fps.alphabet(), std::move(ts)), part};
}

FpsQuotient minimize_fps(const Fps& fps) { return quotient_fps(fps, delay_refine(fps)); }

}  // namespace stutter
