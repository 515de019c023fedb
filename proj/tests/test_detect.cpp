#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detpn/detect.hpp"
#include "detpn/oracle.hpp"
#include "detpn/randnet.hpp"
#include "helpers.hpp"

using namespace detpn;
using testutil::load;
using testutil::marking_of;

namespace {
Marking paired(const LabeledPetriNet& lpn,
               std::initializer_list<std::pair<const char*, int>> left,
               std::initializer_list<std::pair<const char*, int>> right) {
    Marking m = marking_of(lpn, left);
    Marking r = marking_of(lpn, right);
    m.insert(m.end(), r.begin(), r.end());
    return m;
}

std::set<std::set<int>> cycle_state_sets(const std::vector<SimpleCycle>& cycles) {
    std::set<std::set<int>> out;
    for (const SimpleCycle& c : cycles) out.insert({c.states.begin(), c.states.end()});
    return out;
}
}  // namespace

TEST_CASE("cycle enumeration over the seven-place fixture") {
    LabeledPetriNet fig1 = load("fig1.net");
    VerifierNet vn = build_verifier(fig1);
    Brg brg = build_brg(vn);
    std::vector<SimpleCycle> cycles = simple_cycles(brg);
    REQUIRE(cycles.size() == 2);
    int x1 = brg.index_of(paired(fig1, {{"p6", 1}}, {{"p6", 1}}));
    int x5 = brg.index_of(paired(fig1, {{"p2", 1}}, {{"p2", 1}}));
    int x4 = brg.index_of(paired(fig1, {{"p5", 1}}, {{"p5", 1}}));
    int x6 = brg.index_of(paired(fig1, {{"p3", 1}}, {{"p3", 1}}));
    CHECK(cycle_state_sets(cycles) ==
          std::set<std::set<int>>{{x1, x5}, {x4, x6}});
    for (const SimpleCycle& c : cycles) {
        std::multiset<std::string> labels(c.labels.begin(), c.labels.end());
        if (c.states[0] == x1 || c.states[0] == x5)
            CHECK(labels == std::multiset<std::string>{"a", "b"});
        else
            CHECK(labels == std::multiset<std::string>{"a", "c"});
    }
}

TEST_CASE("cycle enumeration corner cases") {
    // acyclic graph: no cycles
    LabeledPetriNet d1 = load("d1.net");
    Brg brg = build_brg(build_verifier(d1));
    CHECK(simple_cycles(brg).empty());

    // parallel edges with distinct labels expand into distinct cycles
    Brg multi;
    multi.states = {{{0}, 0, true}};
    multi.alphabet = {"a", "b"};
    multi.edges = {{0, "a", 0}, {0, "b", 0}};
    multi.initial = 0;
    CHECK(simple_cycles(multi).size() == 2);

    CHECK_THROWS_AS((void)simple_cycles(multi, 1), OverBudgetError);
}

TEST_CASE("two symmetric branches produce four cycles, all unmarked") {
    // the two single-sided cycles plus the two mixed pairings: the branch
    // copies are synchronized only through labels, so both mixed cycles
    // necessarily close as well
    LabeledPetriNet fig4 = load("fig4.net");
    VerifierNet vn = build_verifier(fig4);
    Brg brg = build_brg(vn);
    CHECK(brg.states.size() == 9);
    std::vector<SimpleCycle> cycles = simple_cycles(brg);
    CHECK(cycles.size() == 4);
    MarkedStateSet xm = marked_states(brg, cycles);
    CHECK(xm.global_set.empty());
}

TEST_CASE("reachability from cycles") {
    Brg empty;
    empty.states = {{{0}, 0, true}, {{1}, 0, true}};
    empty.edges = {{0, "a", 1}};
    CHECK(states_reachable_from_cycles(empty, simple_cycles(empty)).empty());

    Brg loop;
    loop.states = {{{0}, 0, true}};
    loop.alphabet = {"a"};
    loop.edges = {{0, "a", 0}};
    CHECK(states_reachable_from_cycles(loop, simple_cycles(loop)) == std::set<int>{0});

    LabeledPetriNet fig1 = load("fig1.net");
    Brg brg = build_brg(build_verifier(fig1));
    std::set<int> reach = states_reachable_from_cycles(brg, simple_cycles(brg));
    for (const char* p : {"p6", "p5", "p2", "p3"})
        CHECK(reach.count(brg.index_of(paired(fig1, {{p, 1}}, {{p, 1}}))));
}

TEST_CASE("marked states") {
    LabeledPetriNet fig1 = load("fig1.net");
    Brg brg = build_brg(build_verifier(fig1));
    std::vector<SimpleCycle> cycles = simple_cycles(brg);
    MarkedStateSet xm = marked_states(brg, cycles);
    int x1 = brg.index_of(paired(fig1, {{"p6", 1}}, {{"p6", 1}}));
    int x6 = brg.index_of(paired(fig1, {{"p3", 1}}, {{"p3", 1}}));
    CHECK(xm.global_set == std::set<int>{x1, x6});
    // global set is the union of the per-cycle sets
    std::set<int> unions;
    for (const auto& s : xm.per_cycle) unions.insert(s.begin(), s.end());
    CHECK(unions == xm.global_set);

    // single deterministic self-loop, certain state: marked (empty word)
    Brg loop;
    loop.states = {{{0}, 0, true}};
    loop.alphabet = {"a"};
    loop.edges = {{0, "a", 0}};
    MarkedStateSet lm = marked_states(loop, simple_cycles(loop));
    CHECK(lm.global_set == std::set<int>{0});
}

TEST_CASE("strong detectability decisions") {
    VerdictReport rep = check_strong_detectability(load("fig1.net"));
    CHECK_FALSE(rep.verdict);
    REQUIRE(rep.witness);
    CHECK(rep.stats.brg_states == 7);
    CHECK(rep.stats.vn_rg_nodes == 25);

    CHECK(check_strong_detectability(testutil::ring2()).verdict);
    CHECK_FALSE(check_strong_detectability(load("fig4.net")).verdict);
    CHECK_FALSE(check_strong_detectability(load("fig7.net")).verdict);
}

TEST_CASE("periodic strong detectability decisions") {
    CHECK(check_periodic_strong_detectability(load("fig1.net")).verdict);
    VerdictReport rep = check_periodic_strong_detectability(load("fig4.net"));
    CHECK_FALSE(rep.verdict);
    REQUIRE(rep.witness);
    CHECK_FALSE(check_periodic_strong_detectability(load("fig7.net")).verdict);

    // both membership semantics agree on all fixture verdicts
    for (const char* name : {"fig1.net", "fig4.net", "fig7.net"}) {
        LabeledPetriNet lpn = load(name);
        CHECK(check_periodic_strong_detectability(lpn, XmSemantics::kLiteral).verdict ==
              check_periodic_strong_detectability(lpn, XmSemantics::kPerCycle).verdict);
    }
}

TEST_CASE("assumption violations are inapplicable, not wrong answers") {
    CHECK_THROWS_AS((void)check_strong_detectability(load("tu_cyclic.net")), InapplicableError);
    CHECK_THROWS_AS((void)check_periodic_strong_detectability(load("d1.net")),
                    InapplicableError);  // deadlock
    LabeledPetriNet grow;
    grow.net.place_names = {"p1"};
    grow.net.transition_names = {"t1"};
    grow.net.pre = {{0}};
    grow.net.post = {{1}};
    grow.m0 = {1};
    grow.labels = {"a"};
    grow.alphabet = {"a"};
    CHECK_THROWS_AS((void)check_strong_detectability(grow, 20), InapplicableError);
}

TEST_CASE("negative witnesses replay as confusable observations") {
    for (const char* name : {"fig1.net", "fig4.net", "fig7.net"}) {
        LabeledPetriNet lpn = load(name);
        for (int variant = 0; variant < 2; ++variant) {
            VerdictReport rep = variant == 0 ? check_strong_detectability(lpn)
                                             : check_periodic_strong_detectability(lpn);
            if (rep.verdict) continue;
            REQUIRE(rep.witness);
            std::vector<Marking> c = consistent_markings(lpn, rep.witness->word);
            CHECK(c.size() != 1);
        }
    }
}

TEST_CASE("strong detectability implies periodic strong detectability") {
    std::mt19937 rng(7008);
    for (int i = 0; i < 25; ++i) {
        LabeledPetriNet lpn = random_valid_lpn(rng);
        bool strong, periodic;
        try {
            strong = check_strong_detectability(lpn).verdict;
            periodic = check_periodic_strong_detectability(lpn).verdict;
        } catch (const OverBudgetError&) {
            continue;
        }
        if (strong) CHECK(periodic);
    }
}

TEST_CASE("verdicts are invariant under renaming") {
    for (const char* name : {"fig1.net", "fig4.net", "fig7.net"}) {
        LabeledPetriNet lpn = load(name);
        LabeledPetriNet renamed = lpn;
        for (std::string& p : renamed.net.place_names) p = "loc_" + p;
        for (std::string& t : renamed.net.transition_names) t = "ev_" + t;
        for (std::string& l : renamed.labels)
            if (!l.empty()) l = "sym_" + l;
        std::set<std::string> alpha(renamed.labels.begin(), renamed.labels.end());
        alpha.erase(kEpsilon);
        renamed.alphabet.assign(alpha.begin(), alpha.end());
        CHECK(check_strong_detectability(lpn).verdict ==
              check_strong_detectability(renamed).verdict);
        CHECK(check_periodic_strong_detectability(lpn).verdict ==
              check_periodic_strong_detectability(renamed).verdict);
    }
}

TEST_CASE("certain cycle states without membership still witness confusion") {
    // every cycle state outside the marked set admits a confusable word
    LabeledPetriNet fig4 = load("fig4.net");
    Brg brg = build_brg(build_verifier(fig4));
    std::vector<SimpleCycle> cycles = simple_cycles(brg);
    MarkedStateSet xm = marked_states(brg, cycles);
    for (size_t ci = 0; ci < cycles.size(); ++ci) {
        for (size_t r = 0; r < cycles[ci].states.size(); ++r) {
            int s = cycles[ci].states[r];
            if (xm.per_cycle[ci].count(s)) continue;
            // word from the initial state through the full cycle to s
            std::vector<std::string> w =
                detail::witness_word_through_cycle(brg, cycles[ci], s);
            CHECK(consistent_markings(fig4, w).size() != 1);
        }
    }
}

TEST_CASE("vacuous periodic verdict is flagged when no cycle exists") {
    // bounded, deadlock-free nets always cycle; build the graph directly
    Brg chain;
    chain.states = {{{0}, 0, true}, {{1}, 0, true}};
    chain.alphabet = {"a"};
    chain.edges = {{0, "a", 1}};
    chain.initial = 0;
    CHECK(simple_cycles(chain).empty());
    // the full checker path needs a real net; reuse the report flag contract
    VerdictReport rep = check_periodic_strong_detectability(load("fig1.net"));
    CHECK_FALSE(rep.vacuous_no_cycles);
}
