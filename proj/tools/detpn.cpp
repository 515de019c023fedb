// Command-line driver: parse a net file, decide strong and/or periodically
// strong detectability, optionally cross-check against the brute-force
// oracle, and emit DOT graphs or a JSON report.
//
// Exit codes: 0 every requested property holds, 1 some property fails,
// 2 usage or parse error, 3 inapplicable assumptions or budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "detpn/detect.hpp"
#include "detpn/io.hpp"
#include "detpn/oracle.hpp"

namespace {

long env_default(const char* name, long fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    long parsed = std::strtol(v, &end, 10);
    return (end && *end == '\0' && parsed > 0) ? parsed : fallback;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw detpn::NetError("cannot write '" + path + "'");
    out << text;
}

void print_report(const detpn::VerifierNet& vn, const detpn::Brg& brg,
                  const detpn::VerdictReport& rep) {
    const char* name =
        rep.property == detpn::Property::kStrong ? "strong detectability"
                                                 : "periodic strong detectability";
    std::cout << name << ": " << (rep.verdict ? "holds" : "fails") << "\n";
    if (rep.witness) {
        std::cout << "  witness state: "
                  << detpn::detail::marking_label(vn.lpn,
                                                  brg.states[rep.witness->state].basis_marking)
                  << "\n  witness word:";
        for (const std::string& s : rep.witness->word) std::cout << " " << s;
        std::cout << "\n";
    }
    if (rep.vacuous_no_cycles)
        std::cout << "  warning: no cycles in the graph; verdict is vacuous\n";
    std::cout << "  stats: lpn_rg=" << rep.stats.lpn_rg_nodes
              << " vn_rg=" << rep.stats.vn_rg_nodes << " brg=" << rep.stats.brg_states
              << " cycles=" << rep.stats.cycle_count << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detectability checker for bounded labeled Petri nets"};
    app.require_subcommand(1);

    std::string file, property = "both", dot_dir, xm = "literal";
    bool with_oracle = false, as_json = false;
    long node_budget = env_default("DETPN_NODE_BUDGET", detpn::kDefaultNodeBudget);
    long cycle_budget = env_default("DETPN_CYCLE_BUDGET", detpn::kDefaultCycleBudget);

    CLI::App* check = app.add_subcommand("check", "decide detectability of a net file");
    check->add_option("file", file, "net file")->required();
    check->add_option("--property", property, "strong|periodic|both (default both)")
        ->check(CLI::IsMember({"strong", "periodic", "both"}));
    check->add_option("--emit-dot", dot_dir, "write lpn_rg.dot, vn_rg.dot, brg.dot here");
    check->add_flag("--oracle", with_oracle, "also run the brute-force oracle");
    check->add_flag("--json", as_json, "emit a JSON report");
    check->add_option("--node-budget", node_budget, "marking budget (env DETPN_NODE_BUDGET)");
    check->add_option("--cycle-budget", cycle_budget, "cycle budget (env DETPN_CYCLE_BUDGET)");
    check->add_option("--xm-semantics", xm, "literal|per-cycle marked-state membership")
        ->check(CLI::IsMember({"literal", "per-cycle"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0, any usage error exits 2
    }

    try {
        detpn::LabeledPetriNet lpn;
        try {
            lpn = detpn::parse_net_file(file);
        } catch (const detpn::NetError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }

        detpn::XmSemantics sem = xm == "literal" ? detpn::XmSemantics::kLiteral
                                                 : detpn::XmSemantics::kPerCycle;
        detpn::VerifierNet vn = detpn::build_verifier(lpn);
        detpn::Brg brg = detpn::build_brg(vn, node_budget);

        std::vector<detpn::VerdictReport> reports;
        if (property == "strong" || property == "both")
            reports.push_back(detpn::check_strong_detectability(lpn, node_budget, cycle_budget));
        if (property == "periodic" || property == "both")
            reports.push_back(detpn::check_periodic_strong_detectability(lpn, sem, node_budget,
                                                                         cycle_budget));

        if (!dot_dir.empty()) {
            write_file(dot_dir + "/lpn_rg.dot",
                       detpn::emit_dot(lpn, detpn::reachability_graph(lpn, node_budget), "lpn_rg"));
            write_file(dot_dir + "/vn_rg.dot",
                       detpn::emit_dot(vn.lpn, detpn::reachability_graph(vn.lpn, node_budget),
                                       "vn_rg"));
            write_file(dot_dir + "/brg.dot", detpn::emit_dot(vn, brg));
        }

        nlohmann::json joracle;
        if (with_oracle) {
            if (property == "strong" || property == "both")
                joracle["strong"] = detpn::oracle_strong_detectability(lpn, node_budget);
            if (property == "periodic" || property == "both")
                joracle["periodic-strong"] =
                    detpn::oracle_periodic_strong_detectability(lpn, node_budget);
        }

        bool all_hold = true;
        if (as_json) {
            nlohmann::json out = nlohmann::json::array();
            for (const detpn::VerdictReport& rep : reports) {
                out.push_back(detpn::to_json(vn, brg, rep));
                all_hold = all_hold && rep.verdict;
            }
            nlohmann::json doc;
            doc["file"] = file;
            doc["reports"] = out;
            if (with_oracle) doc["oracle"] = joracle;
            std::cout << doc.dump(2) << "\n";
        } else {
            for (const detpn::VerdictReport& rep : reports) {
                print_report(vn, brg, rep);
                all_hold = all_hold && rep.verdict;
            }
            if (with_oracle)
                for (const auto& [key, val] : joracle.items())
                    std::cout << "oracle " << key << ": "
                              << (val.get<bool>() ? "holds" : "fails") << "\n";
        }
        return all_hold ? 0 : 1;
    } catch (const detpn::OverBudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const detpn::UnsupportedStructureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const detpn::InapplicableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const detpn::NetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
