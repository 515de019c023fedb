#pragma once

// Shared test utilities: fixture loading and small hand-built nets.

#include <string>

#include "detpn/io.hpp"

namespace testutil {

inline detpn::LabeledPetriNet load(const std::string& name) {
    return detpn::parse_net_file(std::string(FIXTURE_DIR) + "/" + name);
}

/// Marking of an LPN given as place-name/count pairs; unnamed places get 0.
inline detpn::Marking marking_of(const detpn::LabeledPetriNet& lpn,
                                 std::initializer_list<std::pair<const char*, int>> counts) {
    detpn::Marking m(lpn.net.num_places(), 0);
    for (const auto& [name, c] : counts) {
        auto it = std::find(lpn.net.place_names.begin(), lpn.net.place_names.end(), name);
        if (it == lpn.net.place_names.end())
            throw detpn::StructuralError(std::string("no place named ") + name);
        m[it - lpn.net.place_names.begin()] = c;
    }
    return m;
}

inline int transition_id(const detpn::LabeledPetriNet& lpn, const std::string& name) {
    auto it = std::find(lpn.net.transition_names.begin(), lpn.net.transition_names.end(), name);
    if (it == lpn.net.transition_names.end())
        throw detpn::StructuralError("no transition named " + name);
    return static_cast<int>(it - lpn.net.transition_names.begin());
}

/// Two-place chain p1 -t1-> p2 with configurable label for t1.
inline detpn::LabeledPetriNet chain2(const std::string& label) {
    detpn::LabeledPetriNet lpn;
    lpn.net.place_names = {"p1", "p2"};
    lpn.net.transition_names = {"t1"};
    lpn.net.pre = {{1}, {0}};
    lpn.net.post = {{0}, {1}};
    lpn.m0 = {1, 0};
    lpn.labels = {label};
    if (!label.empty()) lpn.alphabet = {label};
    return lpn;
}

/// Single place with an observable self-loop; injectively labeled, fully
/// observable, deadlock free.
inline detpn::LabeledPetriNet self_loop() {
    detpn::LabeledPetriNet lpn;
    lpn.net.place_names = {"p1"};
    lpn.net.transition_names = {"t1"};
    lpn.net.pre = {{1}};
    lpn.net.post = {{1}};
    lpn.m0 = {1};
    lpn.labels = {"a"};
    lpn.alphabet = {"a"};
    return lpn;
}

/// Injectively labeled, fully observable two-place ring: p1 -a-> p2 -b-> p1.
inline detpn::LabeledPetriNet ring2() {
    detpn::LabeledPetriNet lpn;
    lpn.net.place_names = {"p1", "p2"};
    lpn.net.transition_names = {"t1", "t2"};
    lpn.net.pre = {{1, 0}, {0, 1}};
    lpn.net.post = {{0, 1}, {1, 0}};
    lpn.m0 = {1, 0};
    lpn.labels = {"a", "b"};
    lpn.alphabet = {"a", "b"};
    return lpn;
}

}  // namespace testutil
