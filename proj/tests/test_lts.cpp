#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stutter/signature.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace stutter;

namespace {

Path P(const Lts& l, std::string_view start, std::vector<std::pair<std::string_view, std::string_view>> steps = {}) {
    Path p(l.find_state(start));
    for (auto [a, t] : steps) p.push(a == "tau" ? Action::tau() : l.alphabet().find(std::string(a)), l.find_state(t));
    return p;
}

AlphaSet classes(std::initializer_list<Path> ps) {
    AlphaSet s;
    for (const auto& p : ps) s.insert(class_of(p));
    return s;
}

std::vector<StateId> related(const Relation& r, StateId x) {
    std::vector<StateId> out;
    for (StateId y = 0; y < r[x].size(); ++y)
        if (r[x][y]) out.push_back(y);
    return out;
}

}  // namespace

TEST_CASE("parse minimal aut") {
    Lts l = parse_aut("des (0,1,2)\n(0,\"a\",1)\n");
    CHECK(l.num_states() == 2);
    CHECK(l.transitions().size() == 1);
    CHECK(l.transitions()[0].action == l.alphabet().find("a"));
}

TEST_CASE("parse tau alias") {
    Lts l = parse_aut("des (0,1,2)\n(0,\"i\",1)\n");
    CHECK(l.transitions()[0].action.is_tau());
    Lts m = parse_aut("des (0,1,2)\n(0,i,1)\n");
    CHECK(m.transitions()[0].action.is_tau());
    AutOptions opt;
    opt.tau_label = "silent";
    opt.tau_aliases = {};
    Lts n = parse_aut("des (0,2,2)\n(0,\"silent\",1)\n(0,\"tau\",1)\n", opt);
    CHECK(n.transitions()[0].action.is_tau());
    CHECK_FALSE(n.transitions()[1].action.is_tau());
}

TEST_CASE("parse the A-E fixture") {
    Lts l = fixtures::lts("abcde");
    CHECK(l.num_states() == 5);
    CHECK(l.transitions().size() == 13);
    CHECK(l.name(l.find_state("C")) == "C");
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](std::string_view text) {
        try {
            parse_aut(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("des 0,1,2\n") == 1);
    CHECK(line_of("des (0,1,2)\n(0,\"a\",2)\n") == 2);
    CHECK(line_of("des (0,2,2)\n(0,\"a\",1)\n(0,\"a\",1)\n") == 3);
    CHECK(line_of("des (0,1,2)\n(0,\"a\"\n") == 2);
    CHECK(line_of("des (5,0,2)\n") == 1);
    CHECK_THROWS_AS(parse_aut("des (0,2,2)\n(0,\"a\",1)\n"), ParseError);
}

TEST_CASE("aut round trip") {
    for (const char* stem : {"abcde", "fig1", "fig2", "sec3", "single"}) {
        CAPTURE(stem);
        Lts l = fixtures::lts(stem);
        CHECK(parse_aut(write_aut(l)) == l);
    }
}

TEST_CASE("weak closure") {
    Lts l = fixtures::lts("abcde");
    auto r = weak_closure(l);
    CHECK(related(r, l.find_state("A")) ==
          std::vector<StateId>{l.find_state("A"), l.find_state("D"), l.find_state("E")});
    Lts f2 = fixtures::lts("fig2");
    CHECK(related(weak_closure(f2), f2.find_state("x1")) ==
          std::vector<StateId>{f2.find_state("x1"), f2.find_state("x2")});
    Lts plain = parse_aut("des (0,2,3)\n(0,\"a\",1)\n(1,\"b\",2)\n");
    auto id = weak_closure(plain);
    for (StateId x = 0; x < 3; ++x) CHECK(related(id, x) == std::vector<StateId>{x});
}

TEST_CASE("alpha rows of the A-E fixture") {
    Lts l = fixtures::lts("abcde");
    CHECK(alpha(l, l.find_state("D"), Semantics::branching, 5) == classes({P(l, "D")}));
    CHECK(alpha(l, l.find_state("E"), Semantics::delay, 1) == classes({P(l, "E"), P(l, "E", {{"a", "D"}})}));
    CHECK(alpha(l, l.find_state("A"), Semantics::weak, 3) ==
          classes({P(l, "A"), P(l, "A", {{"b", "A"}}), P(l, "A", {{"b", "D"}}), P(l, "A", {{"b", "E"}}),
                   P(l, "A", {{"tau", "D"}}), P(l, "A", {{"tau", "E"}}), P(l, "A", {{"a", "D"}})}));
    // branching: silent prefixes with at most one visible step at the end
    CHECK(alpha(l, l.find_state("E"), Semantics::branching, 5) == classes({P(l, "E"), P(l, "E", {{"a", "D"}})}));
    CHECK(alpha(l, l.find_state("A"), Semantics::branching, 5) ==
          classes({P(l, "A"), P(l, "A", {{"b", "A"}}), P(l, "A", {{"a", "D"}}), P(l, "A", {{"tau", "D"}}),
                   P(l, "A", {{"tau", "E"}}), P(l, "A", {{"tau", "E"}, {"a", "D"}})}));
    // eta: explicit silent prefix, then one step whose endpoint is collapsed
    CHECK(alpha(l, l.find_state("E"), Semantics::eta, 5).count(class_of(P(l, "E", {{"a", "D"}}))) == 1);
    // delay keeps trailing silent steps explicit
    CHECK(alpha(l, l.find_state("B"), Semantics::delay, 5).count(class_of(P(l, "B", {{"b", "B"}, {"tau", "E"}}))) ==
          1);
}

TEST_CASE("signatures under the single block") {
    Lts l = fixtures::lts("abcde");
    Partition top = Partition::single_block(l.num_states());
    Symbol T = start_symbol(0);
    Symbol Ta = step_symbol(l.alphabet().find("a"), 0);
    Symbol Tb = step_symbol(l.alphabet().find("b"), 0);
    auto lang = [&](std::string_view x) {
        auto aut = signature_automaton(l, top, l.find_state(x), Semantics::branching);
        CHECK(aut.is_finite());
        return aut.words(6);
    };
    std::set<SymbolWord> abc{{T}, {T, Ta}, {T, Tb}};
    CHECK(lang("A") == abc);
    CHECK(lang("B") == abc);
    CHECK(lang("C") == abc);
    CHECK(lang("E") == std::set<SymbolWord>{{T}, {T, Ta}});
    CHECK(lang("D") == std::set<SymbolWord>{{T}});
}

TEST_CASE("signature of a deadlocked state") {
    Lts l = fixtures::lts("single");
    for (Semantics sem : all_semantics) {
        auto aut = signature_automaton(l, Partition::discrete(1), 0, sem);
        CHECK(aut.words(4) == std::set<SymbolWord>{{start_symbol(0)}});
    }
}

TEST_CASE("signature under the discrete partition contains the silent path") {
    Lts l = fixtures::lts("sec3");
    Partition d = Partition::discrete(l.num_states());
    auto aut = signature_automaton(l, d, l.find_state("x1"), Semantics::branching);
    SymbolWord w = encode_image(P(l, "x1", {{"tau", "x2"}, {"a", "x4"}}), d);
    CHECK(w.size() == 3);
    CHECK(aut.accepts(w));
}

TEST_CASE("distinguishing word") {
    Lts l = fixtures::lts("abcde");
    Partition top = Partition::single_block(l.num_states());
    auto a = signature_automaton(l, top, l.find_state("A"), Semantics::branching);
    auto e = signature_automaton(l, top, l.find_state("E"), Semantics::branching);
    auto w = distinguishing_word(a, e);
    REQUIRE(w);
    CHECK(a.accepts(*w) != e.accepts(*w));
    CHECK(w->size() == 2);
    CHECK_FALSE(distinguishing_word(a, a));
}

namespace {

bool silent_cycle(const Lts& l) {
    auto r = weak_closure(l);
    for (StateId x = 0; x < l.num_states(); ++x)
        for (StateId y = 0; y < l.num_states(); ++y)
            if (x != y && r[x][y] && r[y][x]) return true;
    return false;
}

Partition random_partition(gen::Rng& rng, std::size_t n) {
    std::size_t k = 1 + gen::below(rng, n);
    std::vector<std::size_t> keys(n);
    for (auto& v : keys) v = gen::below(rng, k);
    return Partition::from_keys<std::size_t>(keys);
}

}  // namespace

TEST_CASE("signature language equals the enumerated alpha images when silent steps are acyclic") {
    gen::Rng rng(5);
    std::size_t checked = 0;
    while (checked < 300) {
        Lts l = gen::lts(rng, 6, 2, 0.6);
        if (silent_cycle(l)) continue;
        ++checked;
        Partition part = random_partition(rng, l.num_states());
        std::size_t depth = l.num_states() * (part.num_blocks() + 1);
        for (Semantics sem : all_semantics) {
            for (StateId x = 0; x < l.num_states(); ++x) {
                std::set<SymbolWord> expect;
                for (const auto& c : alpha(l, x, sem, depth)) expect.insert(encode_image(c.canonical(), part));
                auto aut = signature_automaton(l, part, x, sem);
                REQUIRE(aut.is_finite());
                auto got = aut.words(depth + 1);
                std::set<SymbolWord> short_expect;
                for (const auto& w : expect)
                    if (w.size() <= 2) short_expect.insert(w);
                auto one = signature_automaton(l, part, x, sem, SignatureScope::one_step).words(depth + 1);
                if (got != expect || one != short_expect) {
                    CAPTURE(to_string(sem));
                    CAPTURE(x);
                    CAPTURE(write_aut(l));
                    CHECK(got == expect);
                    CHECK(one == short_expect);
                }
            }
        }
    }
}

TEST_CASE("signature automata are canonical") {
    gen::Rng rng(17);
    for (int k = 0; k < 200; ++k) {
        Lts l = gen::lts(rng, 6, 2, 0.5);
        Partition part = random_partition(rng, l.num_states());
        for (Semantics sem : all_semantics) {
            for (StateId x = 0; x < l.num_states(); ++x) {
                auto a = signature_automaton(l, part, x, sem);
                for (StateId y = 0; y < l.num_states(); ++y) {
                    auto b = signature_automaton(l, part, y, sem);
                    bool same_language = !distinguishing_word(a, b).has_value();
                    CHECK(same_language == (a == b));
                }
            }
        }
    }
}
