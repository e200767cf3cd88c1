#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stutter/partition.hpp"
#include "stutter/paths.hpp"

namespace stutter {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct Transition {
    StateId source = 0;
    Action action;
    StateId target = 0;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Finite labelled transition system. Transitions are kept sorted and unique.
class Lts {
public:
    Lts() = default;
    Lts(std::size_t num_states, Alphabet alphabet, std::vector<Transition> transitions, StateId initial = 0);

    std::size_t num_states() const { return out_.size(); }
    std::size_t num_transitions() const { return transitions_.size(); }
    StateId initial() const { return initial_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::vector<Step>& out(StateId s) const { return out_.at(s); }

    const std::vector<std::string>& state_names() const { return names_; }
    const std::string& name(StateId s) const { return names_.at(s); }
    void set_state_names(std::vector<std::string> names);
    /// Looks a state up by name, falling back to a decimal index.
    StateId find_state(std::string_view name) const;

    bool is_execution(const Path& p) const;

    friend bool operator==(const Lts& a, const Lts& b);

private:
    StateId initial_ = 0;
    Alphabet alphabet_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<Step>> out_;
    std::vector<std::string> names_;
};

struct AutOptions {
    std::string tau_label = "tau";
    /// Extra labels read as the silent action.
    std::vector<std::string> tau_aliases = {"i"};
};

/// Aldebaran format: `des (init, m, n)` then m lines `(src, "label", dst)`.
Lts parse_aut(std::string_view text, const AutOptions& options = {});
std::string write_aut(const Lts& lts);

/// One state name per line; line i names state i.
std::vector<std::string> parse_state_names(std::string_view text, std::size_t expected);

enum class Semantics { branching, weak, eta, delay };

std::string_view to_string(Semantics s);
/// Throws std::invalid_argument on an unknown name.
Semantics parse_semantics(std::string_view name);
inline constexpr Semantics all_semantics[] = {Semantics::branching, Semantics::weak, Semantics::eta,
                                              Semantics::delay};

/// Reflexive-transitive closure of the silent steps; row s lists the states
/// reachable from s by zero or more tau transitions.
using Relation = std::vector<std::vector<bool>>;
Relation weak_closure(const Lts& lts);

using AlphaSet = std::set<StutterClass>;

/// The stutter classes of the semantics' alpha-paths from `x` whose underlying
/// executions have at most `depth` steps.
AlphaSet alpha(const Lts& lts, StateId x, Semantics sem, std::size_t depth);

/// All executions from `x` with at most `depth` steps, in lexicographic order.
std::vector<Path> executions(const Lts& lts, StateId x, std::size_t depth);

}  // namespace stutter
