#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stutter/fps.hpp"
#include "stutter/paths.hpp"
#include "stutter/rational.hpp"

namespace stutter {

/// The prefix-minimal members of `u`, sorted and without duplicates.
/// Works for paths and for stutter classes.
template <class T>
std::vector<T> separation_closure(std::vector<T> u) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    std::vector<T> out;
    for (const auto& x : u) {
        bool minimal = std::none_of(u.begin(), u.end(), [&](const T& y) { return !(y == x) && leq(y, x); });
        if (minimal) out.push_back(x);
    }
    return out;
}

/// Finitely generated upward-closed set, stored as its generator antichain.
template <class T>
class UpperSet {
public:
    UpperSet() = default;
    static UpperSet normalize(std::vector<T> gens) {
        UpperSet u;
        u.gens_ = separation_closure(std::move(gens));
        return u;
    }
    static UpperSet principal(T g) { return normalize({std::move(g)}); }

    const std::vector<T>& generators() const { return gens_; }
    bool empty() const { return gens_.empty(); }
    bool contains(const T& x) const {
        return std::any_of(gens_.begin(), gens_.end(), [&](const T& g) { return leq(g, x); });
    }
    /// Whether every member of *this lies in `other`.
    bool subset_of(const UpperSet& other) const {
        return std::all_of(gens_.begin(), gens_.end(), [&](const T& g) { return other.contains(g); });
    }

    friend UpperSet upset_union(const UpperSet& a, const UpperSet& b) {
        std::vector<T> gens = a.gens_;
        gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
        return normalize(std::move(gens));
    }
    // In a prefix order two filters meet only when their generators are comparable.
    friend UpperSet upset_intersect(const UpperSet& a, const UpperSet& b) {
        std::vector<T> gens;
        for (const auto& g : a.gens_) {
            for (const auto& h : b.gens_) {
                if (leq(g, h))
                    gens.push_back(h);
                else if (leq(h, g))
                    gens.push_back(g);
            }
        }
        return normalize(std::move(gens));
    }
    friend bool operator==(const UpperSet&, const UpperSet&) = default;

private:
    std::vector<T> gens_;
};

using PathUpSet = UpperSet<Path>;
using ClassUpSet = UpperSet<StutterClass>;

/// Sum of mu_p over the generators, i.e. over the separation closure.
Rational valuation(const Fps& fps, const PathUpSet& u);

/// alpha(start)(future of c): the weight of all minimal paths from the start
/// whose stutter-invariant form is c's canonical path.
Rational class_future_measure(const Fps& fps, const StutterClass& c);

/// alpha(x)(u) for a finitely generated class-level open set.
Rational alpha_measure(const Fps& fps, StateId x, const ClassUpSet& u);

struct LawReport {
    std::string law;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::optional<std::string> witness;
};

/// Randomized check of the valuation and separation-closure laws on
/// executions drawn from `fps`. Deterministic for a given seed.
std::vector<LawReport> audit_valuation(const Fps& fps, std::uint64_t seed, std::size_t trials);

}  // namespace stutter
