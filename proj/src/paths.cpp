#include "stutter/paths.hpp"

#include <algorithm>

namespace stutter {

Alphabet::Alphabet(std::string tau_label) { labels_.push_back(std::move(tau_label)); }

Action Alphabet::intern(const std::string& label) {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it != labels_.end()) return Action{static_cast<std::uint32_t>(it - labels_.begin())};
    labels_.push_back(label);
    return Action{static_cast<std::uint32_t>(labels_.size() - 1)};
}

Action Alphabet::find(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw std::out_of_range("unknown action '" + label + "'");
    return Action{static_cast<std::uint32_t>(it - labels_.begin())};
}

bool Alphabet::contains(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

const std::string& Alphabet::label(Action a) const { return labels_.at(a.id); }

std::vector<Action> Alphabet::visible() const {
    std::vector<Action> out;
    for (std::uint32_t i = 1; i < labels_.size(); ++i) out.push_back(Action{i});
    return out;
}

Path Path::prefix(std::size_t n) const {
    n = std::min(n, steps_.size());
    return Path(start_, std::vector<Step>(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(n)));
}

StutterClass::StutterClass(const Path& p) : canonical_(stutter_invariant(p)) {}

Word trace(const Path& p) {
    Word w;
    w.reserve(p.length());
    for (const auto& s : p.steps()) w.push_back(s.action);
    return w;
}

StateId last(const Path& p) { return p.state_at(p.length()); }

bool is_tau_self_step(const Path& p, std::size_t i) {
    return p.steps()[i].action.is_tau() && p.steps()[i].target == p.state_at(i);
}

StutterBasis stutter_basis(const Path& p) {
    StutterBasis b;
    b.image_index.reserve(p.length() + 1);
    b.image_index.push_back(0);
    for (std::size_t i = 0; i < p.length(); ++i) {
        std::size_t prev = b.image_index.back();
        b.image_index.push_back(is_tau_self_step(p, i) ? prev : prev + 1);
    }
    return b;
}

Path stutter_invariant(const Path& p) {
    Path out(p.start());
    for (std::size_t i = 0; i < p.length(); ++i) {
        if (!is_tau_self_step(p, i)) out.push(p.steps()[i].action, p.steps()[i].target);
    }
    return out;
}

bool stutter_equiv(const Path& p, const Path& q) { return stutter_invariant(p) == stutter_invariant(q); }

namespace {
StateId apply(std::span<const StateId> f, StateId x) {
    if (x >= f.size()) throw DomainError("state " + std::to_string(x) + " outside the domain of the state map");
    return f[x];
}
}  // namespace

Path map_path(std::span<const StateId> f, const Path& p) {
    Path out(apply(f, p.start()));
    for (const auto& s : p.steps()) out.push(s.action, apply(f, s.target));
    return out;
}

StutterClass map_class(std::span<const StateId> f, const StutterClass& c) {
    return StutterClass(map_path(f, c.canonical()));
}

bool prefix_leq(const Path& p, const Path& q) {
    if (p.start() != q.start() || p.length() > q.length()) return false;
    return std::equal(p.steps().begin(), p.steps().end(), q.steps().begin());
}

bool class_leq(const StutterClass& c1, const StutterClass& c2) {
    return prefix_leq(c1.canonical(), c2.canonical());
}

std::string to_string(const Path& p, std::span<const std::string> state_names, const Alphabet& alphabet) {
    auto name = [&](StateId s) { return s < state_names.size() ? state_names[s] : std::to_string(s); };
    std::string out = "(" + name(p.start());
    for (const auto& s : p.steps()) {
        out += ',';
        out += alphabet.label(s.action);
        out += ',';
        out += name(s.target);
    }
    out += ')';
    return out;
}

std::size_t PathHash::operator()(const Path& p) const noexcept {
    std::size_t h = std::hash<StateId>{}(p.start());
    for (const auto& s : p.steps()) {
        h ^= (static_cast<std::size_t>(s.action.id) << 32 | s.target) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace stutter
