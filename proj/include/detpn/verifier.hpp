#pragma once

// Verifier-net construction: the synchronous composition of an LPN with a
// place-disjoint copy of itself, synchronized on observable labels. Places
// are ordered primed block first so a VN marking is [M'; M].

#include <functional>
#include <optional>
#include <set>

#include "detpn/basis.hpp"
#include "detpn/petri.hpp"

namespace detpn {

/// Provenance of a VN transition: the originating transition on each side,
/// or none for the lambda component.
struct Provenance {
    std::optional<TransitionId> left;   // transition of G' (primed copy)
    std::optional<TransitionId> right;  // transition of G
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct VerifierNet {
    LabeledPetriNet lpn;                 // over P' then P, marking shape [M'; M]
    std::vector<Provenance> provenance;  // [vn transition]
    int source_places = 0;               // |P| of the source LPN

    bool diagonal(const Marking& m) const {
        for (int p = 0; p < source_places; ++p)
            if (m[p] != m[p + source_places]) return false;
        return true;
    }
};

namespace detail {

inline std::string provenance_name(const LabeledPetriNet& src, const Provenance& pr) {
    auto side = [&](const std::optional<TransitionId>& t, bool primed) {
        if (!t) return std::string("lam");
        return src.net.transition_names[*t] + (primed ? "'" : "");
    };
    return "(" + side(pr.left, true) + "," + side(pr.right, false) + ")";
}

}  // namespace detail

/// Build the verifier net of an LPN. Unobservable transitions of each copy
/// are paired with lambda; observable transitions are paired across copies
/// whenever their labels agree.
inline VerifierNet build_verifier(const LabeledPetriNet& src) {
    const int np = src.net.num_places();
    VerifierNet vn;
    vn.source_places = np;
    LabeledPetriNet& v = vn.lpn;
    v.alphabet = src.alphabet;
    for (const std::string& name : src.net.place_names)
        v.net.place_names.push_back(name + "'");
    for (const std::string& name : src.net.place_names) v.net.place_names.push_back(name);
    v.m0 = src.m0;
    v.m0.insert(v.m0.end(), src.m0.begin(), src.m0.end());
    v.net.pre.assign(2 * np, {});
    v.net.post.assign(2 * np, {});

    auto add_transition = [&](const Provenance& pr, const std::string& label) {
        v.net.transition_names.push_back(detail::provenance_name(src, pr));
        v.labels.push_back(label);
        vn.provenance.push_back(pr);
        for (int p = 0; p < 2 * np; ++p) {
            int pre = 0, post = 0;
            if (pr.left && p < np) {
                pre += src.net.pre[p][*pr.left];
                post += src.net.post[p][*pr.left];
            }
            if (pr.right && p >= np) {
                pre += src.net.pre[p - np][*pr.right];
                post += src.net.post[p - np][*pr.right];
            }
            v.net.pre[p].push_back(pre);
            v.net.post[p].push_back(post);
        }
    };

    for (TransitionId tu : src.unobservable()) add_transition({std::nullopt, tu}, kEpsilon);
    for (TransitionId tu : src.unobservable()) add_transition({tu, std::nullopt}, kEpsilon);
    for (const std::string& e : src.alphabet)
        for (TransitionId tl : src.observable())
            if (src.labels[tl] == e)
                for (TransitionId tr : src.observable())
                    if (src.labels[tr] == e) add_transition({tl, tr}, e);
    return vn;
}

/// Prop. 3 as a checkable identity: T_u-subnet acyclicity transfers between
/// the LPN and its VN. Returns the boolean equality (always true if the
/// construction is correct).
inline bool acyclicity_transfer_check(const LabeledPetriNet& lpn, const VerifierNet& vn) {
    return is_acyclic(tu_induced_subnet(lpn)) == is_acyclic(tu_induced_subnet(vn.lpn));
}

namespace detail {

// All firing sequences of bounded length, depth-first.
inline void enumerate_sequences(const LabeledPetriNet& lpn, const Marking& m,
                                std::vector<TransitionId>& prefix, int remaining,
                                const std::function<void(const std::vector<TransitionId>&)>& visit) {
    visit(prefix);
    if (remaining == 0) return;
    for (TransitionId t = 0; t < lpn.net.num_transitions(); ++t) {
        if (!enabled(lpn.net, m, t)) continue;
        prefix.push_back(t);
        Marking m2 = fire(lpn.net, m, t);
        enumerate_sequences(lpn, m2, prefix, remaining - 1, visit);
        prefix.pop_back();
    }
}

inline std::vector<std::string> observation(const LabeledPetriNet& lpn,
                                            const std::vector<TransitionId>& seq) {
    std::vector<std::string> w;
    for (TransitionId t : seq)
        if (!lpn.labels[t].empty()) w.push_back(lpn.labels[t]);
    return w;
}

}  // namespace detail

/// Exhaustive desk-scale check of the VN language characterization: every
/// VN sequence up to length_bound projects to a pair of firable sequences
/// with equal observations, and every such pair of source sequences is
/// realizable by a VN sequence. Test oracle only.
inline bool vn_language_check(const LabeledPetriNet& lpn, const VerifierNet& vn,
                              int length_bound) {
    // Direction 1: VN sequences project to equal-observation pairs.
    bool ok = true;
    std::vector<TransitionId> prefix;
    detail::enumerate_sequences(vn.lpn, vn.lpn.m0, prefix, length_bound,
        [&](const std::vector<TransitionId>& seq) {
            if (!ok) return;
            std::vector<TransitionId> left, right;
            for (TransitionId t : seq) {
                if (vn.provenance[t].left) left.push_back(*vn.provenance[t].left);
                if (vn.provenance[t].right) right.push_back(*vn.provenance[t].right);
            }
            try {
                fire_sequence(lpn.net, lpn.m0, left);
                fire_sequence(lpn.net, lpn.m0, right);
            } catch (const PreconditionError&) {
                ok = false;
                return;
            }
            if (detail::observation(lpn, left) != detail::observation(lpn, right)) ok = false;
        });
    if (!ok) return false;

    // Direction 2: every equal-observation pair of source sequences is
    // realizable in the VN. The canonical interleaving fires the left
    // unobservables, then the right unobservables, then the synchronized
    // observable pair, segment by segment.
    std::vector<std::vector<TransitionId>> all;
    detail::enumerate_sequences(lpn, lpn.m0, prefix, length_bound,
        [&](const std::vector<TransitionId>& seq) { all.push_back(seq); });

    auto vn_transition = [&](const Provenance& pr) {
        for (size_t i = 0; i < vn.provenance.size(); ++i)
            if (vn.provenance[i] == pr) return static_cast<TransitionId>(i);
        throw StructuralError("missing VN transition");
    };
    auto segments = [&](const std::vector<TransitionId>& seq) {
        // split at observable transitions; each segment: (eps prefix, obs or none)
        std::vector<std::pair<std::vector<TransitionId>, std::optional<TransitionId>>> segs;
        segs.push_back({{}, std::nullopt});
        for (TransitionId t : seq) {
            if (lpn.labels[t].empty()) {
                segs.back().first.push_back(t);
            } else {
                segs.back().second = t;
                segs.push_back({{}, std::nullopt});
            }
        }
        return segs;
    };

    for (const auto& a : all) {
        for (const auto& b : all) {
            if (detail::observation(lpn, a) != detail::observation(lpn, b)) continue;
            auto sa = segments(a), sb = segments(b);
            std::vector<TransitionId> interleaved;
            for (size_t i = 0; i < sa.size(); ++i) {
                for (TransitionId t : sa[i].first)
                    interleaved.push_back(vn_transition({t, std::nullopt}));
                for (TransitionId t : sb[i].first)
                    interleaved.push_back(vn_transition({std::nullopt, t}));
                if (sa[i].second)
                    interleaved.push_back(vn_transition({*sa[i].second, *sb[i].second}));
            }
            try {
                fire_sequence(vn.lpn.net, vn.lpn.m0, interleaved);
            } catch (const PreconditionError&) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace detpn
