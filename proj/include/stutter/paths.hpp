#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stutter {

using StateId = std::uint32_t;

/// Interned action. Id 0 is reserved for the silent action in every alphabet.
struct Action {
    std::uint32_t id = 0;

    static constexpr Action tau() { return Action{0}; }
    constexpr bool is_tau() const { return id == 0; }

    friend constexpr auto operator<=>(const Action&, const Action&) = default;
};

/// Symbol table for actions. The silent action is always entry 0.
class Alphabet {
public:
    explicit Alphabet(std::string tau_label = "tau");

    Action intern(const std::string& label);
    /// Returns the action for `label` or throws std::out_of_range.
    Action find(const std::string& label) const;
    bool contains(const std::string& label) const;
    const std::string& label(Action a) const;
    const std::string& tau_label() const { return labels_.front(); }
    std::size_t size() const { return labels_.size(); }

    /// Visible actions in id order.
    std::vector<Action> visible() const;

private:
    std::vector<std::string> labels_;
};

using Word = std::vector<Action>;

struct Step {
    Action action;
    StateId target = 0;

    friend auto operator<=>(const Step&, const Step&) = default;
};

/// A path x0 a1 x1 ... an xn. Equivalent to a function from the prefixes of
/// a1...an to states: the prefix of length i maps to the i-th state.
class Path {
public:
    Path() = default;
    explicit Path(StateId start) : start_(start) {}
    Path(StateId start, std::vector<Step> steps) : start_(start), steps_(std::move(steps)) {}

    StateId start() const { return start_; }
    std::span<const Step> steps() const { return steps_; }
    std::size_t length() const { return steps_.size(); }
    bool empty() const { return steps_.empty(); }

    /// State reached after the first `i` steps, i in [0, length()].
    StateId state_at(std::size_t i) const { return i == 0 ? start_ : steps_[i - 1].target; }

    Path& push(Action a, StateId target) {
        steps_.push_back(Step{a, target});
        return *this;
    }
    Path extended(Action a, StateId target) const {
        Path p = *this;
        p.push(a, target);
        return p;
    }
    Path prefix(std::size_t n) const;

    friend auto operator<=>(const Path&, const Path&) = default;
    friend bool operator==(const Path&, const Path&) = default;

private:
    StateId start_ = 0;
    std::vector<Step> steps_;
};

/// idx[i] is the position in the stutter-invariant path that the i-th state
/// of the original path corresponds to.
struct StutterBasis {
    std::vector<std::size_t> image_index;

    friend bool operator==(const StutterBasis&, const StutterBasis&) = default;
};

/// Stutter-equivalence class, keyed by its canonical (stutter-invariant) path.
class StutterClass {
public:
    StutterClass() = default;
    /// Accepts any path and stores its stutter-invariant form.
    explicit StutterClass(const Path& p);

    const Path& canonical() const { return canonical_; }
    StateId start() const { return canonical_.start(); }

    friend auto operator<=>(const StutterClass&, const StutterClass&) = default;
    friend bool operator==(const StutterClass&, const StutterClass&) = default;

private:
    Path canonical_;
};

class DomainError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Total map on states 0..size()-1; anything outside is a domain error.
using StateMap = std::vector<StateId>;

Word trace(const Path& p);
StateId last(const Path& p);

StutterBasis stutter_basis(const Path& p);
Path stutter_invariant(const Path& p);
bool stutter_equiv(const Path& p, const Path& q);
inline StutterClass class_of(const Path& p) { return StutterClass(p); }

/// True when step `i` (0-based) of `p` is a silent self-step.
bool is_tau_self_step(const Path& p, std::size_t i);

Path map_path(std::span<const StateId> f, const Path& p);
StutterClass map_class(std::span<const StateId> f, const StutterClass& c);

bool prefix_leq(const Path& p, const Path& q);
bool class_leq(const StutterClass& c1, const StutterClass& c2);
inline bool leq(const Path& p, const Path& q) { return prefix_leq(p, q); }
inline bool leq(const StutterClass& a, const StutterClass& b) { return class_leq(a, b); }

/// Renders `(x0,a1,x1,...)` using the given names.
std::string to_string(const Path& p, std::span<const std::string> state_names, const Alphabet& alphabet);

struct PathHash {
    std::size_t operator()(const Path& p) const noexcept;
};

}  // namespace stutter
