#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detpn/brg.hpp"
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
}  // namespace

TEST_CASE("alpha flag on the seven-place fixture") {
    LabeledPetriNet fig1 = load("fig1.net");
    VerifierNet vn = build_verifier(fig1);
    CHECK(alpha_flag(vn, vn.lpn.m0) == 1);
    CHECK(alpha_flag(vn, paired(fig1, {{"p6", 1}}, {{"p6", 1}})) == 0);

    // no unobservable transitions at all: always 0
    VerifierNet ring = build_verifier(testutil::ring2());
    for (const Marking& m : reachability_graph(ring.lpn).nodes)
        CHECK(alpha_flag(ring, m) == 0);

    CHECK_THROWS_AS((void)alpha_flag(build_verifier(load("tu_cyclic.net")),
                                     build_verifier(load("tu_cyclic.net")).lpn.m0),
                    UnsupportedStructureError);
}

TEST_CASE("both alpha routes agree on all basis markings") {
    std::mt19937 rng(7005);
    std::vector<LabeledPetriNet> nets{load("fig1.net"), load("fig4.net"), load("fig7.net")};
    for (int i = 0; i < 15; ++i) nets.push_back(random_valid_lpn(rng));
    for (const LabeledPetriNet& lpn : nets) {
        VerifierNet vn = build_verifier(lpn);
        for (const Marking& m : basis_marking_set(vn.lpn).markings)
            CHECK(alpha_flag(vn, m) == alpha_flag_state_equation(vn, m));
    }
}

TEST_CASE("basis graph of the seven-place fixture") {
    LabeledPetriNet fig1 = load("fig1.net");
    VerifierNet vn = build_verifier(fig1);
    Brg brg = build_brg(vn);
    REQUIRE(brg.states.size() == 7);
    CHECK(brg.states[brg.initial].basis_marking == vn.lpn.m0);
    CHECK(brg.states[brg.initial].alpha == 1);

    auto state = [&](std::initializer_list<std::pair<const char*, int>> left,
                     std::initializer_list<std::pair<const char*, int>> right) {
        int i = brg.index_of(paired(fig1, left, right));
        REQUIRE(i >= 0);
        return i;
    };
    // the two uncertain same-marking states carry alpha = 1
    CHECK(brg.states[state({{"p2", 1}}, {{"p2", 1}})].alpha == 1);
    CHECK(brg.states[state({{"p5", 1}}, {{"p5", 1}})].alpha == 1);
    // the certain states carry alpha = 0
    CHECK(brg.states[state({{"p3", 1}}, {{"p3", 1}})].alpha == 0);
    CHECK(brg.states[state({{"p6", 1}}, {{"p6", 1}})].alpha == 0);
    // the off-diagonal states flag inequality
    CHECK_FALSE(brg.states[state({{"p5", 1}}, {{"p6", 1}})].diag_equal);
    CHECK_FALSE(brg.states[state({{"p6", 1}}, {{"p5", 1}})].diag_equal);
    for (const BrgState& s : brg.states)
        CHECK(s.diag_equal == vn.diagonal(s.basis_marking));
}

TEST_CASE("fully observable injective net: basis graph mirrors the reachability graph") {
    LabeledPetriNet ring = testutil::ring2();
    VerifierNet vn = build_verifier(ring);
    Brg brg = build_brg(vn);
    ReachabilityGraph rg = reachability_graph(vn.lpn);
    CHECK(brg.states.size() == rg.nodes.size());
    for (const BrgState& s : brg.states) {
        CHECK(s.alpha == 0);
        CHECK(s.diag_equal);
    }
    CHECK(brg.edges.size() == rg.edges.size());
}

TEST_CASE("basis graph edges replay in the verifier reachability graph") {
    std::mt19937 rng(7006);
    std::vector<LabeledPetriNet> nets{load("fig1.net"), load("fig4.net")};
    for (int i = 0; i < 8; ++i) nets.push_back(random_valid_lpn(rng));
    for (const LabeledPetriNet& lpn : nets) {
        VerifierNet vn = build_verifier(lpn);
        Brg brg = build_brg(vn);
        ReachabilityGraph rg = reachability_graph(vn.lpn);
        CHECK(brg.states.size() <= rg.nodes.size());
        for (const BrgEdge& e : brg.edges) {
            const Marking& from = brg.states[e.from].basis_marking;
            const Marking& to = brg.states[e.to].basis_marking;
            CHECK(rg.index_of(from) >= 0);
            CHECK(rg.index_of(to) >= 0);
            // some explanation + observable firing connects them
            bool connected = false;
            for (TransitionId t : vn.lpn.observable()) {
                if (vn.lpn.labels[t] != e.symbol) continue;
                for (const Explanation& x : minimal_explanations(vn.lpn, from, t))
                    if (fire(vn.lpn.net, fire_sequence(vn.lpn.net, from, x.sequence), t) == to)
                        connected = true;
            }
            CHECK(connected);
        }
    }
}

TEST_CASE("uncertainty appears in the basis graph exactly when some word confuses") {
    std::mt19937 rng(7007);
    std::vector<LabeledPetriNet> nets{load("fig1.net"), load("fig4.net"), load("fig7.net")};
    for (int i = 0; i < 10; ++i) nets.push_back(random_valid_lpn(rng));
    for (const LabeledPetriNet& lpn : nets) {
        Brg brg = build_brg(build_verifier(lpn));
        bool brg_uncertain = false;
        for (const BrgState& s : brg.states)
            if (s.alpha == 1 || !s.diag_equal) brg_uncertain = true;
        // exhaustive search over observations up to length 5
        bool word_uncertain = false;
        std::vector<std::vector<std::string>> words{{}};
        for (size_t head = 0; head < words.size() && !word_uncertain; ++head) {
            std::vector<std::string> w = words[head];
            std::vector<Marking> c = consistent_markings(lpn, w);
            if (!c.empty() && c.size() != 1) word_uncertain = true;
            if (w.size() >= 5) continue;
            for (const std::string& s : lpn.alphabet) {
                std::vector<std::string> w2 = w;
                w2.push_back(s);
                words.push_back(std::move(w2));
            }
        }
        CHECK(brg_uncertain == word_uncertain);
    }
}

TEST_CASE("word execution over the basis graph") {
    LabeledPetriNet fig1 = load("fig1.net");
    VerifierNet vn = build_verifier(fig1);
    Brg brg = build_brg(vn);
    int x1 = brg.index_of(paired(fig1, {{"p6", 1}}, {{"p6", 1}}));
    REQUIRE(x1 >= 0);
    CHECK(run_relation(brg, x1, {}) == std::set<int>{x1});
    CHECK(run_relation(brg, x1, {"b", "a"}) == std::set<int>{x1});
    CHECK(run_relation(brg, x1, {"c"}).empty());

    // deterministic chain: every word along it yields a singleton
    Brg ring = build_brg(build_verifier(testutil::ring2()));
    CHECK(run_relation(ring, ring.initial, {"a"}).size() == 1);
    CHECK(run_relation(ring, ring.initial, {"a", "b"}) == std::set<int>{ring.initial});
}
