#pragma once

// Textual net format, DOT emission and the JSON verdict report.
//
// Net file grammar (line oriented, '#' starts a comment):
//   place <id> ...                one or more place declarations
//   trans <id> <label|eps> ...    one or more transition declarations
//   arc <from> <to> [weight]      place->transition or transition->place
//   marking <place> <count> ...   exactly one initial-marking line
// Weights default to 1 and must be >= 1; counts must be >= 0.

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "detpn/brg.hpp"
#include "detpn/detect.hpp"
#include "detpn/verifier.hpp"

namespace detpn {

struct ParseError : NetError {
    ParseError(int line, int column, const std::string& what)
        : NetError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                   ": " + what),
          line(line),
          column(column) {}
    int line;
    int column;
};

namespace detail {

struct Token {
    std::string text;
    int column = 0;
};

inline std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
        if (line[i] == '#') break;
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

}  // namespace detail

inline LabeledPetriNet parse_net(const std::string& text) {
    std::map<std::string, int> places, transitions;
    std::vector<std::string> place_names, transition_names, labels;
    std::vector<std::tuple<std::string, std::string, int, int, int>> arcs;  // from,to,w,line,col
    std::map<std::string, int> marking_counts;
    bool marking_seen = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<detail::Token> toks = detail::tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0].text;
        auto need = [&](size_t n, const std::string& what) {
            if (toks.size() < n) throw ParseError(lineno, toks[0].column, "expected " + what);
        };
        if (kw == "place") {
            need(2, "place ids after 'place'");
            for (size_t i = 1; i < toks.size(); ++i) {
                if (!places.emplace(toks[i].text, static_cast<int>(place_names.size())).second)
                    throw ParseError(lineno, toks[i].column,
                                     "duplicate place id '" + toks[i].text + "'");
                place_names.push_back(toks[i].text);
            }
        } else if (kw == "trans") {
            need(3, "'trans <id> <label|eps>'");
            if (toks.size() % 2 == 0)
                throw ParseError(lineno, toks.back().column, "trans entries come in id/label pairs");
            for (size_t i = 1; i + 1 < toks.size(); i += 2) {
                if (!transitions.emplace(toks[i].text, static_cast<int>(transition_names.size()))
                         .second)
                    throw ParseError(lineno, toks[i].column,
                                     "duplicate transition id '" + toks[i].text + "'");
                transition_names.push_back(toks[i].text);
                labels.push_back(toks[i + 1].text == "eps" ? kEpsilon : toks[i + 1].text);
            }
        } else if (kw == "arc") {
            need(3, "'arc <from> <to> [weight]'");
            int weight = 1;
            if (toks.size() >= 4) {
                try {
                    weight = std::stoi(toks[3].text);
                } catch (...) {
                    throw ParseError(lineno, toks[3].column, "malformed arc weight");
                }
                if (weight < 1) throw ParseError(lineno, toks[3].column, "arc weight must be >= 1");
            }
            arcs.emplace_back(toks[1].text, toks[2].text, weight, lineno, toks[1].column);
        } else if (kw == "marking") {
            if (marking_seen)
                throw ParseError(lineno, toks[0].column, "more than one marking block");
            marking_seen = true;
            if (toks.size() % 2 == 0)
                throw ParseError(lineno, toks.back().column,
                                 "marking entries come in place/count pairs");
            for (size_t i = 1; i + 1 < toks.size(); i += 2) {
                int count = 0;
                try {
                    count = std::stoi(toks[i + 1].text);
                } catch (...) {
                    throw ParseError(lineno, toks[i + 1].column, "malformed token count");
                }
                if (count < 0)
                    throw ParseError(lineno, toks[i + 1].column, "token count must be >= 0");
                marking_counts[toks[i].text] = count;
            }
        } else {
            throw ParseError(lineno, toks[0].column, "unknown keyword '" + kw + "'");
        }
    }
    if (place_names.empty()) throw ParseError(lineno, 1, "no places declared");
    if (transition_names.empty()) throw ParseError(lineno, 1, "no transitions declared");
    if (!marking_seen) throw ParseError(lineno, 1, "missing marking block");

    LabeledPetriNet lpn;
    lpn.net.place_names = place_names;
    lpn.net.transition_names = transition_names;
    lpn.labels = labels;
    lpn.net.pre.assign(place_names.size(), std::vector<int>(transition_names.size(), 0));
    lpn.net.post.assign(place_names.size(), std::vector<int>(transition_names.size(), 0));
    for (const auto& [from, to, w, ln, col] : arcs) {
        bool from_place = places.count(from) > 0;
        bool to_place = places.count(to) > 0;
        if (from_place && transitions.count(to))
            lpn.net.pre[places[from]][transitions[to]] += w;
        else if (!from_place && to_place && transitions.count(from))
            lpn.net.post[places[to]][transitions[from]] += w;
        else
            throw ParseError(ln, col, "arc '" + from + " -> " + to +
                                          "' does not connect a declared place and transition");
    }
    lpn.m0.assign(place_names.size(), 0);
    for (const auto& [pname, count] : marking_counts) {
        auto it = places.find(pname);
        if (it == places.end())
            throw ParseError(lineno, 1, "marking references undeclared place '" + pname + "'");
        lpn.m0[it->second] = count;
    }
    std::set<std::string> symbols(labels.begin(), labels.end());
    symbols.erase(kEpsilon);
    lpn.alphabet.assign(symbols.begin(), symbols.end());
    return lpn;
}

inline LabeledPetriNet parse_net_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NetError("cannot open net file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_net(buf.str());
}

/// Inverse of parse_net, up to formatting; reparsing yields an isomorphic net.
inline std::string emit_net(const LabeledPetriNet& lpn) {
    std::ostringstream out;
    out << "place";
    for (const std::string& p : lpn.net.place_names) out << " " << p;
    out << "\n";
    for (int t = 0; t < lpn.net.num_transitions(); ++t)
        out << "trans " << lpn.net.transition_names[t] << " "
            << (lpn.labels[t].empty() ? "eps" : lpn.labels[t]) << "\n";
    for (int p = 0; p < lpn.net.num_places(); ++p)
        for (int t = 0; t < lpn.net.num_transitions(); ++t) {
            if (lpn.net.pre[p][t] > 0)
                out << "arc " << lpn.net.place_names[p] << " " << lpn.net.transition_names[t]
                    << " " << lpn.net.pre[p][t] << "\n";
            if (lpn.net.post[p][t] > 0)
                out << "arc " << lpn.net.transition_names[t] << " " << lpn.net.place_names[p]
                    << " " << lpn.net.post[p][t] << "\n";
        }
    out << "marking";
    for (int p = 0; p < lpn.net.num_places(); ++p)
        if (lpn.m0[p] > 0) out << " " << lpn.net.place_names[p] << " " << lpn.m0[p];
    out << "\n";
    return out.str();
}

namespace detail {

inline std::string marking_label(const LabeledPetriNet& lpn, const Marking& m) {
    std::string out;
    for (int p = 0; p < lpn.net.num_places(); ++p) {
        for (int k = 0; k < m[p]; ++k) {
            if (!out.empty()) out += "+";
            out += lpn.net.place_names[p];
        }
    }
    return out.empty() ? "0" : out;
}

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace detail

/// DOT rendering of a reachability graph (of the LPN or of a VN).
inline std::string emit_dot(const LabeledPetriNet& lpn, const ReachabilityGraph& rg,
                            const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << graph_name << " {\n";
    for (size_t i = 0; i < rg.nodes.size(); ++i)
        out << "  n" << i << " [label=\""
            << detail::dot_escape(detail::marking_label(lpn, rg.nodes[i])) << "\"];\n";
    for (const RgEdge& e : rg.edges)
        out << "  n" << e.from << " -> n" << e.to << " [label=\""
            << detail::dot_escape(lpn.net.transition_names[e.transition]) << "\"];\n";
    out << "}\n";
    return out.str();
}

/// DOT rendering of a BRG; nodes carry "marking | alpha | diag".
inline std::string emit_dot(const VerifierNet& vn, const Brg& brg) {
    std::ostringstream out;
    out << "digraph brg {\n";
    for (size_t i = 0; i < brg.states.size(); ++i) {
        const BrgState& s = brg.states[i];
        out << "  n" << i << " [label=\""
            << detail::dot_escape(detail::marking_label(vn.lpn, s.basis_marking)) << " | "
            << s.alpha << " | " << (s.diag_equal ? "diag" : "off-diag") << "\"";
        if (static_cast<int>(i) == brg.initial) out << ", shape=doublecircle";
        out << "];\n";
    }
    for (const BrgEdge& e : brg.edges)
        out << "  n" << e.from << " -> n" << e.to << " [label=\"" << detail::dot_escape(e.symbol)
            << "\"];\n";
    out << "}\n";
    return out.str();
}

inline nlohmann::json to_json(const VerifierNet& vn, const Brg& brg, const VerdictReport& rep) {
    nlohmann::json j;
    j["property"] = rep.property == Property::kStrong ? "strong" : "periodic-strong";
    j["verdict"] = rep.verdict;
    if (rep.witness) {
        nlohmann::json w;
        w["cycle_states"] = nlohmann::json::array();
        for (int s : rep.witness->cycle_states)
            w["cycle_states"].push_back(detail::marking_label(vn.lpn,
                                                              brg.states[s].basis_marking));
        w["word"] = rep.witness->word;
        w["state"] = rep.witness->state >= 0
                         ? detail::marking_label(vn.lpn, brg.states[rep.witness->state].basis_marking)
                         : "";
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    // elapsed time stays out of the report: output must be byte-identical
    // across runs on the same input
    j["stats"] = {{"lpn_rg_nodes", rep.stats.lpn_rg_nodes},
                  {"vn_rg_nodes", rep.stats.vn_rg_nodes},
                  {"brg_states", rep.stats.brg_states},
                  {"cycle_count", rep.stats.cycle_count}};
    if (rep.vacuous_no_cycles) j["warning"] = "no cycles in the BRG: verdict vacuous";
    return j;
}

}  // namespace detpn
