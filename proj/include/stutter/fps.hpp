#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stutter/lts.hpp"
#include "stutter/partition.hpp"
#include "stutter/paths.hpp"
#include "stutter/rational.hpp"

namespace stutter {

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProbTransition {
    StateId source = 0;
    Action action;
    StateId target = 0;
    Rational prob;
};

/// Fully probabilistic system: every state's outgoing mass is exactly 0 or 1.
class Fps {
public:
    Fps() = default;
    /// Validates probabilities and row sums; throws ValidationError.
    Fps(std::vector<std::string> state_names, Alphabet alphabet, std::vector<ProbTransition> transitions);

    std::size_t num_states() const { return names_.size(); }
    const std::vector<std::string>& state_names() const { return names_; }
    const std::string& name(StateId s) const { return names_.at(s); }
    StateId find_state(std::string_view name) const;
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<ProbTransition>& transitions() const { return transitions_; }
    /// Outgoing transitions of `s`, sorted by (action, target).
    const std::vector<ProbTransition>& out(StateId s) const { return out_.at(s); }
    Rational prob(StateId s, Action a, StateId t) const;
    Rational row_sum(StateId s) const;
    /// P(s, tau, s).
    Rational tau_self_loop(StateId s) const { return prob(s, Action::tau(), s); }

    bool is_execution(const Path& p) const;

    friend bool operator==(const Fps& a, const Fps& b);

private:
    std::vector<std::string> names_;
    Alphabet alphabet_;
    std::vector<ProbTransition> transitions_;
    std::vector<std::vector<ProbTransition>> out_;
};

struct FpsOptions {
    std::string tau_label = "tau";
};

/// Line format `src action prob dst`; a line holding a single name declares
/// a state; `#` starts a comment.
Fps parse_fps(std::string_view text, const FpsOptions& options = {});
std::string write_fps(const Fps& fps);

/// Product of the step probabilities, or 0 when `p` is not an execution.
Rational mu_p(const Fps& fps, const Path& p);

/// Observable part of a weak step: Action::tau() stands for the empty
/// observation, so the trace language is tau* ; a visible action a gives tau* a.
using Observation = Action;

/// Executions from `x` with at most `depth` steps whose trace is in the
/// language of `obs` and whose last state is a target, with no shorter
/// qualifying prefix.
std::vector<Path> first_hit_set(const Fps& fps, StateId x, Observation obs, const std::vector<bool>& targets,
                                std::size_t depth);
/// As first_hit_set but without the first-hit restriction.
std::vector<Path> hit_set(const Fps& fps, StateId x, Observation obs, const std::vector<bool>& targets,
                          std::size_t depth);

/// P(s, L, targets) for every state s, as the least solution of the
/// first-hit linear system, solved exactly.
std::vector<Rational> reach_probabilities(const Fps& fps, Observation obs, const std::vector<bool>& targets);
Rational prob_reach(const Fps& fps, StateId x, Observation obs, const std::vector<bool>& targets);

/// (observation, block) -> P(x, tau* obs, block), nonzero entries only.
using ProbSignature = std::map<std::pair<Observation, BlockId>, Rational>;
std::vector<ProbSignature> prob_signatures(const Fps& fps, const Partition& part);

std::vector<Partition> delay_refine_rounds(const Fps& fps);
/// Coarsest partition with equal signatures inside every block.
Partition delay_refine(const Fps& fps);

/// Whether the equivalence induced by `part` is a probabilistic delay bisimulation.
bool is_delay_bisimulation(const Fps& fps, const Partition& part);

inline constexpr std::size_t brute_force_limit = 8;
/// Exhaustive search over all partitions for the coarsest delay bisimulation.
/// Throws std::length_error above brute_force_limit states.
Partition brute_force_delay(const Fps& fps);

struct FpsQuotient {
    Fps fps;
    Partition partition;
};

/// Quotient on delay_refine blocks. A block moves with action a to another
/// block with the probability of leaving it that way after silent steps
/// inside the block. Throws std::logic_error if members disagree.
FpsQuotient minimize_fps(const Fps& fps);
FpsQuotient quotient_fps(const Fps& fps, const Partition& part);

}  // namespace stutter
