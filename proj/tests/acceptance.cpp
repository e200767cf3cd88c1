// Acceptance run: one PASS/FAIL line per criterion. Exact criteria compare
// rationals with zero tolerance; each criterion also has a wall-clock limit.
#include <chrono>
#include <functional>
#include <iostream>

#include "stutter/refine.hpp"
#include "stutter/valuation.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

using namespace stutter;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::vector<bool> targets(const Fps& f, std::initializer_list<const char*> names) {
    std::vector<bool> t(f.num_states(), false);
    for (const char* n : names) t[f.find_state(n)] = true;
    return t;
}

std::string blocks(const Lts& l, const Partition& p) {
    std::string out;
    for (const auto& b : p.blocks()) {
        out += '{';
        for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + l.name(b[i]);
        out += '}';
    }
    return out;
}

void merge(Outcome& o, const props::Result& r, const std::string& name) {
    o.require(r.ok(), name + ": " + std::to_string(r.failures) + " failures, first: " + r.first_failure);
    if (o.ok) o.detail += (o.detail.empty() ? "" : "; ") + name + " " + std::to_string(r.cases) + " cases";
}

Outcome headline() {
    Outcome o;
    Fps f = fixtures::fps("sec5");
    Rational left = prob_reach(f, f.find_state("x1"), f.alphabet().find("b"), targets(f, {"x4"}));
    Rational mid = prob_reach(f, f.find_state("x1'"), f.alphabet().find("b"), targets(f, {"x4'"}));
    o.require(left == Rational(1, 2), "P(x1, tau*b, {x4}) = " + format_rational(left));
    o.require(mid == Rational(1, 2), "P(x1', tau*b, {x4'}) = " + format_rational(mid));
    Partition p = delay_refine(f);
    for (const char* i : {"1", "2", "3", "4"}) {
        std::string x = std::string("x") + i;
        o.require(p.same_block(f.find_state(x), f.find_state(x + "'")) &&
                      p.same_block(f.find_state(x), f.find_state(std::string("y") + i)),
                  std::string("merge failed for index ") + i);
    }
    if (o.ok) o.detail = "both probabilities 1/2, all four merges hold";
    return o;
}

Outcome silent_step_example() {
    Outcome o;
    Lts l = fixtures::lts("sec3");
    o.require(equivalent(l, l.find_state("x1"), l.find_state("x1'"), Semantics::branching), "x1, x1' separated");
    Partition part = refine(l, Semantics::branching);
    Path p(l.find_state("x1"));
    p.push(Action::tau(), l.find_state("x2"));
    p.push(l.alphabet().find("b"), l.find_state("x5"));
    Path q(l.find_state("y1"));
    q.push(l.alphabet().find("b"), l.find_state("y2"));
    o.require(l.is_execution(p), "<x1 tau x2 b x5> is not an execution");
    o.require(stutter_equiv(map_path(part.block_map(), p), map_path(part.block_map(), q)),
              "images are not stutter equivalent");
    if (o.ok) o.detail = "x1 ~ x1', image of <x1 tau x2 b x5> ~ <y1 b y2>";
    return o;
}

Outcome spectrum() {
    Outcome o;
    Lts l = fixtures::lts("abcde");
    const std::pair<Semantics, const char*> expected[] = {
        {Semantics::weak, "{A,B,C}{D}{E}"},
        {Semantics::eta, "{A,C}{B}{D}{E}"},
        {Semantics::delay, "{A,B}{C}{D}{E}"},
        {Semantics::branching, "{A}{B}{C}{D}{E}"},
    };
    for (auto [sem, want] : expected) {
        std::string oracle = blocks(l, classical_partition(l, sem));
        std::string got = blocks(l, refine(l, sem));
        o.require(oracle == want, std::string(to_string(sem)) + " oracle gave " + oracle);
        o.require(got == oracle, std::string(to_string(sem)) + " refine gave " + got);
        if (o.ok) o.detail += std::string(o.detail.empty() ? "" : " ") + std::string(to_string(sem)) + " " + got;
    }
    return o;
}

Outcome weak_not_branching() {
    Outcome o;
    Lts l = fixtures::lts("fig1");
    StateId x1 = l.find_state("x1"), y1 = l.find_state("y1");
    o.require(equivalent(l, x1, y1, Semantics::weak), "weak check failed");
    o.require(!equivalent(l, x1, y1, Semantics::branching), "branching check passed");
    if (o.ok) o.detail = "weak: equivalent, branching: inequivalent";
    return o;
}

Outcome separation() {
    Outcome o;
    Fps g = fixtures::fps("fig3");
    Path p1(g.find_state("x0"));
    p1.push(Action::tau(), g.find_state("x1"));
    Path p1b = p1.extended(Action::tau(), g.find_state("x1'"));
    Path p2(g.find_state("x0"));
    p2.push(Action::tau(), g.find_state("x2"));
    auto u = separation_closure(std::vector<Path>{p1, p1b, p2});
    std::vector<Path> want{p1, p2};
    std::sort(want.begin(), want.end());
    o.require(u == want, "closure has " + std::to_string(u.size()) + " members");
    if (o.ok) o.detail = "closure = {p1, p2}";
    return o;
}

Outcome oracle_suites() {
    Outcome o;
    merge(o, props::refine_matches_classical(2024, 1000), "refine vs relational oracle");
    merge(o, props::delay_matches_brute_force(2024, 300), "delay_refine vs exhaustive search");
    return o;
}

Outcome law_audit() {
    Outcome o;
    auto check = [&](const std::vector<LawReport>& reports, const std::string& where) {
        o.require(reports.size() == 9, where + ": expected 9 laws");
        for (const auto& r : reports) {
            o.require(r.trials >= 500, where + " " + r.law + ": only " + std::to_string(r.trials) + " trials");
            o.require(r.failures == 0, where + " " + r.law + ": " + std::to_string(r.failures) + " failures" +
                                           (r.witness ? ", witness " + *r.witness : ""));
        }
    };
    check(audit_valuation(fixtures::fps("sec5"), 42, 500), "combined example");
    gen::Rng rng(4242);
    for (int k = 0; k < 20; ++k) check(audit_valuation(gen::fps(rng, 6, 2, 4), rng(), 500), "random system");
    if (o.ok) o.detail = "9 laws x 500 trials on the combined example and 20 random systems, 0 failures";
    return o;
}

Outcome future_measure() {
    Outcome o;
    merge(o, props::future_measure_matches_truncation(fixtures::fps("sec5"), 8, 300, 12), "combined example");
    merge(o, props::future_measure_random(8, 100, 12), "100 random systems");
    return o;
}

Outcome path_laws() {
    Outcome o;
    merge(o, props::paths_suite(2024, 10000), "random paths");
    return o;
}

}  // namespace

int main() {
    using Clock = std::chrono::steady_clock;
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "reachability 1/2 and delay merges on the combined example", 1, headline},
        {2, "silent-step example: x1 ~ x1' and stutter-equivalent image", 1, silent_step_example},
        {3, "four-way spectrum on the A-E system", 1, spectrum},
        {4, "weakly but not branching bisimilar", 1, weak_not_branching},
        {5, "separation closure drops the redundant path", 1, separation},
        {6, "refinement equals the oracles on random systems", 300, oracle_suites},
        {7, "valuation law audit", 60, law_audit},
        {8, "class future measure against truncated enumeration", 60, future_measure},
        {9, "path property suite", 30, path_laws},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (o.ok && secs > c.limit_seconds) {
            o.ok = false;
            o.detail += "; over the time limit of " + std::to_string(c.limit_seconds) + " s";
        }
        failed += o.ok ? 0 : 1;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << secs
                  << " s): " << o.detail << '\n';
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
