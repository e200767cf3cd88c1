#include "stutter/lts.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <charconv>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>

namespace stutter {

Lts::Lts(std::size_t num_states, Alphabet alphabet, std::vector<Transition> transitions, StateId initial)
    : initial_(initial), alphabet_(std::move(alphabet)), transitions_(std::move(transitions)), out_(num_states) {
    if (num_states > 0 && initial_ >= num_states) throw std::invalid_argument("initial state out of range");
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
    for (const auto& t : transitions_) {
        if (t.source >= num_states || t.target >= num_states)
            throw std::invalid_argument("transition endpoint out of range");
        if (t.action.id >= alphabet_.size()) throw std::invalid_argument("transition action not in alphabet");
        out_[t.source].push_back(Step{t.action, t.target});
    }
    names_.reserve(num_states);
    for (std::size_t s = 0; s < num_states; ++s) names_.push_back(std::to_string(s));
}

void Lts::set_state_names(std::vector<std::string> names) {
    if (names.size() != num_states()) throw std::invalid_argument("state name count does not match state count");
    names_ = std::move(names);
}

StateId Lts::find_state(std::string_view name) const {
    for (std::size_t s = 0; s < names_.size(); ++s) {
        if (names_[s] == name) return static_cast<StateId>(s);
    }
    StateId idx = 0;
    auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), idx);
    if (ec == std::errc() && ptr == name.data() + name.size() && idx < num_states()) return idx;
    throw std::out_of_range("unknown state '" + std::string(name) + "'");
}

bool Lts::is_execution(const Path& p) const {
    if (p.start() >= num_states()) return false;
    for (std::size_t i = 0; i < p.length(); ++i) {
        const auto& succ = out_[p.state_at(i)];
        if (std::find(succ.begin(), succ.end(), p.steps()[i]) == succ.end()) return false;
    }
    return true;
}

bool operator==(const Lts& a, const Lts& b) {
    if (a.num_states() != b.num_states() || a.initial_ != b.initial_) return false;
    // Interning order may differ, so compare by label.
    auto labelled = [](const Lts& l) {
        std::vector<std::tuple<StateId, std::string, StateId>> out;
        for (const auto& t : l.transitions_)
            out.emplace_back(t.source, t.action.is_tau() ? std::string() : l.alphabet_.label(t.action), t.target);
        std::sort(out.begin(), out.end());
        return out;
    };
    return labelled(a) == labelled(b);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::size_t parse_index(std::string_view s, std::size_t line, const char* what) {
    s = trim(s);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(line, std::string("malformed ") + what + " '" + std::string(s) + "'");
    return v;
}

// Splits "(a, b, c)" into three fields, honouring a quoted middle field.
std::array<std::string, 3> split_triple(std::string_view body, std::size_t line) {
    body = trim(body);
    if (body.size() < 2 || body.front() != '(' || body.back() != ')') throw ParseError(line, "expected '(...)'");
    body = body.substr(1, body.size() - 2);
    std::array<std::string, 3> out;
    std::size_t field = 0;
    bool quoted = false;
    std::string cur;
    for (char c : body) {
        if (c == '"') {
            quoted = !quoted;
            cur += c;
        } else if (c == ',' && !quoted) {
            if (field == 2) throw ParseError(line, "too many fields");
            out[field++] = cur;
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError(line, "unterminated quote");
    if (field != 2) throw ParseError(line, "expected three fields");
    out[2] = cur;
    return out;
}

}  // namespace

Lts parse_aut(std::string_view text, const AutOptions& options) {
    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos <= text.size();) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    std::size_t i = 0;
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
    if (i == lines.size()) throw ParseError(1, "missing 'des' header");
    std::string_view header = trim(lines[i]);
    if (header.substr(0, 3) != "des") throw ParseError(i + 1, "missing 'des' header");
    auto fields = split_triple(header.substr(3), i + 1);
    std::size_t init = parse_index(fields[0], i + 1, "initial state");
    std::size_t m = parse_index(fields[1], i + 1, "transition count");
    std::size_t n = parse_index(fields[2], i + 1, "state count");
    if (n == 0 || init >= n) throw ParseError(i + 1, "initial state out of range");

    Alphabet alphabet(options.tau_label);
    std::vector<Transition> transitions;
    std::set<Transition> seen;
    for (++i; i < lines.size(); ++i) {
        std::string_view line = trim(lines[i]);
        if (line.empty()) continue;
        auto f = split_triple(line, i + 1);
        std::size_t src = parse_index(f[0], i + 1, "source state");
        std::size_t dst = parse_index(f[2], i + 1, "target state");
        if (src >= n || dst >= n) throw ParseError(i + 1, "state out of range");
        std::string label(trim(f[1]));
        if (label.size() >= 2 && label.front() == '"' && label.back() == '"') label = label.substr(1, label.size() - 2);
        if (label.empty()) throw ParseError(i + 1, "empty label");
        bool silent = label == options.tau_label ||
                      std::find(options.tau_aliases.begin(), options.tau_aliases.end(), label) !=
                          options.tau_aliases.end();
        Action a = silent ? Action::tau() : alphabet.intern(label);
        Transition t{static_cast<StateId>(src), a, static_cast<StateId>(dst)};
        if (!seen.insert(t).second) throw ParseError(i + 1, "duplicate transition");
        transitions.push_back(t);
    }
    if (transitions.size() != m)
        throw ParseError(1, "header declares " + std::to_string(m) + " transitions, found " +
                                std::to_string(transitions.size()));
    return Lts(n, std::move(alphabet), std::move(transitions), static_cast<StateId>(init));
}

std::string write_aut(const Lts& lts) {
    std::ostringstream out;
    out << "des (" << lts.initial() << "," << lts.num_transitions() << "," << lts.num_states() << ")\n";
    for (const auto& t : lts.transitions()) {
        out << "(" << t.source << ",\"" << lts.alphabet().label(t.action) << "\"," << t.target << ")\n";
    }
    return out.str();
}

std::vector<std::string> parse_state_names(std::string_view text, std::size_t expected) {
    std::vector<std::string> names;
    std::size_t line_no = 0;
    for (std::size_t pos = 0; pos < text.size();) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        ++line_no;
        auto line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        if (line.empty()) continue;
        if (std::find(names.begin(), names.end(), line) != names.end())
            throw ParseError(line_no, "duplicate state name '" + std::string(line) + "'");
        names.emplace_back(line);
    }
    if (names.size() != expected)
        throw ParseError(line_no, "expected " + std::to_string(expected) + " state names, found " +
                                      std::to_string(names.size()));
    return names;
}

std::string_view to_string(Semantics s) {
    switch (s) {
        case Semantics::branching: return "branching";
        case Semantics::weak: return "weak";
        case Semantics::eta: return "eta";
        case Semantics::delay: return "delay";
    }
    return "?";
}

Semantics parse_semantics(std::string_view name) {
    for (auto s : all_semantics) {
        if (to_string(s) == name) return s;
    }
    throw std::invalid_argument("unknown semantics '" + std::string(name) + "'");
}

Relation weak_closure(const Lts& lts) {
    const std::size_t n = lts.num_states();
    Relation r(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<StateId> stack{static_cast<StateId>(s)};
        r[s][s] = true;
        while (!stack.empty()) {
            StateId u = stack.back();
            stack.pop_back();
            for (const auto& st : lts.out(u)) {
                if (st.action.is_tau() && !r[s][st.target]) {
                    r[s][st.target] = true;
                    stack.push_back(st.target);
                }
            }
        }
    }
    return r;
}

namespace {

constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

// Fewest tau steps from `x` to every state.
std::vector<std::size_t> tau_distances(const Lts& lts, StateId x) {
    std::vector<std::size_t> dist(lts.num_states(), unreachable);
    std::deque<StateId> queue{x};
    dist[x] = 0;
    while (!queue.empty()) {
        StateId u = queue.front();
        queue.pop_front();
        for (const auto& st : lts.out(u)) {
            if (st.action.is_tau() && dist[st.target] == unreachable) {
                dist[st.target] = dist[u] + 1;
                queue.push_back(st.target);
            }
        }
    }
    return dist;
}

// Visits every tau-only execution from `p`'s last state extending `p` by at most `budget` steps.
// Silent self-steps are skipped: the shorter execution has the same class.
void for_each_tau_extension(const Lts& lts, Path& p, std::size_t budget, const std::function<void(const Path&)>& fn) {
    fn(p);
    if (budget == 0) return;
    for (const auto& st : lts.out(last(p))) {
        if (!st.action.is_tau() || st.target == last(p)) continue;
        p.push(st.action, st.target);
        for_each_tau_extension(lts, p, budget - 1, fn);
        p = p.prefix(p.length() - 1);
    }
}

}  // namespace

AlphaSet alpha(const Lts& lts, StateId x, Semantics sem, std::size_t depth) {
    if (x >= lts.num_states()) throw std::out_of_range("unknown state " + std::to_string(x));
    AlphaSet out;
    out.insert(class_of(Path(x)));
    switch (sem) {
        case Semantics::branching: {
            // tau-executions, each optionally followed by one visible step
            Path p(x);
            for_each_tau_extension(lts, p, depth, [&](const Path& q) {
                out.insert(class_of(q));
                if (q.length() >= depth) return;
                for (const auto& st : lts.out(last(q))) {
                    if (!st.action.is_tau()) out.insert(class_of(q.extended(st.action, st.target)));
                }
            });
            break;
        }
        case Semantics::weak: {
            auto from_x = tau_distances(lts, x);
            for (StateId z = 0; z < lts.num_states(); ++z) {
                if (from_x[z] == unreachable) continue;
                for (const auto& st : lts.out(z)) {
                    auto from_y = tau_distances(lts, st.target);
                    for (StateId end = 0; end < lts.num_states(); ++end) {
                        if (from_y[end] == unreachable || from_x[z] + 1 + from_y[end] > depth) continue;
                        out.insert(class_of(Path(x).extended(st.action, end)));
                    }
                }
            }
            break;
        }
        case Semantics::eta: {
            Path p(x);
            for_each_tau_extension(lts, p, depth, [&](const Path& q) {
                out.insert(class_of(q));
                if (q.length() >= depth) return;
                for (const auto& st : lts.out(last(q))) {
                    auto from_y = tau_distances(lts, st.target);
                    for (StateId end = 0; end < lts.num_states(); ++end) {
                        if (from_y[end] == unreachable || q.length() + 1 + from_y[end] > depth) continue;
                        out.insert(class_of(q.extended(st.action, end)));
                    }
                }
            });
            break;
        }
        case Semantics::delay: {
            auto from_x = tau_distances(lts, x);
            for (StateId z = 0; z < lts.num_states(); ++z) {
                if (from_x[z] == unreachable || from_x[z] + 1 > depth) continue;
                for (const auto& st : lts.out(z)) {
                    Path p = Path(x).extended(st.action, st.target);
                    for_each_tau_extension(lts, p, depth - from_x[z] - 1,
                                           [&](const Path& q) { out.insert(class_of(q)); });
                }
            }
            break;
        }
    }
    return out;
}

std::vector<Path> executions(const Lts& lts, StateId x, std::size_t depth) {
    std::vector<Path> out;
    std::function<void(Path&)> rec = [&](Path& p) {
        out.push_back(p);
        if (p.length() >= depth) return;
        for (const auto& st : lts.out(last(p))) {
            p.push(st.action, st.target);
            rec(p);
            p = p.prefix(p.length() - 1);
        }
    };
    Path p(x);
    rec(p);
    return out;
}

}  // namespace stutter
