#include "stutter/valuation.hpp"

#include <functional>
#include <random>
#include <set>

namespace stutter {

Rational valuation(const Fps& fps, const PathUpSet& u) {
    Rational total = 0;
    for (const auto& g : u.generators()) total += mu_p(fps, g);
    return total;
}

Rational class_future_measure(const Fps& fps, const StutterClass& c) {
    const Path& p = c.canonical();
    Rational w = mu_p(fps, p);
    if (w == 0) return 0;
    // any number of silent self-loops may precede each step: a geometric factor per position
    for (std::size_t i = 0; i < p.length(); ++i) w /= Rational(1) - fps.tau_self_loop(p.state_at(i));
    return w;
}

Rational alpha_measure(const Fps& fps, StateId x, const ClassUpSet& u) {
    Rational total = 0;
    for (const auto& g : u.generators()) {
        if (g.start() == x) total += class_future_measure(fps, g);
    }
    return total;
}

namespace {

constexpr std::size_t depth_cap = 8;

class Sampler {
public:
    Sampler(const Fps& fps, std::uint64_t seed) : fps_(fps), rng_(seed) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool coin() { return below(2) == 0; }

    // Continue `p` by up to `steps` simulated moves.
    Path extend(Path p, std::size_t steps) {
        for (std::size_t i = 0; i < steps; ++i) {
            const auto& out = fps_.out(last(p));
            if (out.empty()) break;
            std::vector<double> w;
            for (const auto& t : out) w.push_back(t.prob.get_d());
            const auto& t = out[std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng_)];
            p.push(t.action, t.target);
        }
        return p;
    }
    Path execution() { return extend(Path(static_cast<StateId>(below(fps_.num_states()))), below(depth_cap + 1)); }

    // A set of executions that also contains some of their prefixes.
    std::vector<Path> execution_set() {
        std::vector<Path> out;
        std::size_t k = 1 + below(5);
        for (std::size_t i = 0; i < k; ++i) {
            Path p = execution();
            if (coin()) out.push_back(p.prefix(below(p.length() + 1)));
            out.push_back(std::move(p));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    std::vector<Path> extensions_of(const std::vector<Path>& base) {
        std::vector<Path> out;
        for (const auto& p : base) {
            std::size_t k = below(3);
            for (std::size_t i = 0; i < k; ++i) out.push_back(extend(p, 1 + below(depth_cap)));
        }
        return out;
    }

private:
    const Fps& fps_;
    std::mt19937_64 rng_;
};

// Literal form of the definition: x stays iff its history meets u only in x.
std::vector<Path> closure_by_history(const std::vector<Path>& u) {
    std::set<Path> members(u.begin(), u.end());
    std::vector<Path> out;
    for (const auto& x : members) {
        bool alone = true;
        for (std::size_t k = 0; k < x.length(); ++k) {
            if (members.count(x.prefix(k))) alone = false;
        }
        if (alone) out.push_back(x);
    }
    return out;
}

}  // namespace

std::vector<LawReport> audit_valuation(const Fps& fps, std::uint64_t seed, std::size_t trials) {
    if (fps.num_states() == 0) throw std::invalid_argument("audit needs at least one state");
    Sampler rnd(fps, seed);
    auto show = [&](const std::vector<Path>& ps) {
        std::string s = "{";
        for (const auto& p : ps) {
            if (s.size() > 1) s += ", ";
            s += to_string(p, fps.state_names(), fps.alphabet());
        }
        return s + "}";
    };

    struct Law {
        std::string name;
        std::function<std::optional<std::string>()> check;  // witness on failure
    };
    std::vector<Law> laws = {
        {"strictness",
         [&]() -> std::optional<std::string> {
             if (valuation(fps, PathUpSet{}) != 0 || valuation(fps, PathUpSet::normalize({})) != 0)
                 return std::string("valuation of the empty set is nonzero");
             return std::nullopt;
         }},
        {"monotonicity",
         [&]() -> std::optional<std::string> {
             auto g = rnd.execution_set();
             auto up = PathUpSet::normalize(g);
             auto smaller = PathUpSet::normalize(rnd.extensions_of(g));
             auto more = rnd.execution_set();
             more.insert(more.end(), g.begin(), g.end());
             auto larger = PathUpSet::normalize(more);
             if (!smaller.subset_of(up) || !up.subset_of(larger)) return "generated sets are not nested: " + show(g);
             if (valuation(fps, smaller) > valuation(fps, up) || valuation(fps, up) > valuation(fps, larger))
                 return show(smaller.generators()) + " <= " + show(up.generators()) + " <= " +
                        show(larger.generators());
             return std::nullopt;
         }},
        {"modularity",
         [&]() -> std::optional<std::string> {
             auto u = PathUpSet::normalize(rnd.execution_set());
             auto v = PathUpSet::normalize(rnd.execution_set());
             if (valuation(fps, u) + valuation(fps, v) !=
                 valuation(fps, upset_union(u, v)) + valuation(fps, upset_intersect(u, v)))
                 return show(u.generators()) + " and " + show(v.generators());
             return std::nullopt;
         }},
        {"closure idempotence",
         [&]() -> std::optional<std::string> {
             auto u = rnd.execution_set();
             auto once = separation_closure(u);
             if (separation_closure(once) != once || once != closure_by_history(u)) return show(u);
             return std::nullopt;
         }},
        {"hereditary",
         [&]() -> std::optional<std::string> {
             auto sep = separation_closure(rnd.execution_set());
             std::vector<Path> sub;
             for (const auto& p : sep) {
                 if (rnd.coin()) sub.push_back(p);
             }
             if (separation_closure(sub) != sub) return show(sub);
             return std::nullopt;
         }},
        {"closure of upset",
         [&]() -> std::optional<std::string> {
             auto u = rnd.execution_set();
             auto up = rnd.extensions_of(u);
             up.insert(up.end(), u.begin(), u.end());
             if (separation_closure(up) != separation_closure(u)) return show(u);
             return std::nullopt;
         }},
        {"separated bound",
         [&]() -> std::optional<std::string> {
             Path p = rnd.execution();
             auto sep = separation_closure(rnd.extensions_of(std::vector<Path>(1 + rnd.below(4), p)));
             Rational total = 0;
             for (const auto& q : sep) total += mu_p(fps, q);
             if (total > mu_p(fps, p))
                 return to_string(p, fps.state_names(), fps.alphabet()) + " below " + show(sep);
             return std::nullopt;
         }},
        {"order reversal",
         [&]() -> std::optional<std::string> {
             Path p = rnd.execution();
             Path q = rnd.extend(p, rnd.below(depth_cap + 1));
             if (mu_p(fps, q) > mu_p(fps, p)) return show({p, q});
             return std::nullopt;
         }},
        {"unit at empty path",
         [&]() -> std::optional<std::string> {
             Path e(static_cast<StateId>(rnd.below(fps.num_states())));
             if (mu_p(fps, e) != 1) return show({e});
             return std::nullopt;
         }},
    };

    std::vector<LawReport> reports;
    for (const auto& law : laws) {
        LawReport r{law.name, trials, 0, std::nullopt};
        for (std::size_t t = 0; t < trials; ++t) {
            if (auto w = law.check()) {
                ++r.failures;
                // keep the shortest witness
                if (!r.witness || w->size() < r.witness->size()) r.witness = std::move(w);
            }
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace stutter
