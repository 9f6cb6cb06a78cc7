#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "polarsim/core.hpp"

namespace polarsim {

// Initial belief configurations. All map agent index i to a value in [0,1];
// preconditions are the smallest n for which the formula is well defined.

/// Equally spaced beliefs i/(n-1). n=1 yields the single belief 0.
BeliefConfig beliefs_uniform(int n);

/// Two groups with moderately dissimilar beliefs: first half in [0.2,0.4),
/// second half in [0.6,0.8). Requires n >= 2.
BeliefConfig beliefs_mild(int n);

/// Two strongly opposed groups: first half in [0,0.2), second in [0.8,1).
/// Requires n >= 2.
BeliefConfig beliefs_extreme(int n);

/// Three groups in [0,0.2), [0.4,0.6) and [0.8,1). Requires n >= 3.
BeliefConfig beliefs_tripolar(int n);

// Influence-graph topologies.

/// Every agent influences every other with constant c.
InfluenceGraph graph_clique(int n, double c = 0.5);

/// Each agent influences only its successor on a ring with weight c.
/// Requires n >= 2.
InfluenceGraph graph_circular(int n, double c = 0.5);

/// Two internally connected groups (split at ceil(n/2), first group strict
/// '<') with zero cross-group influence. Requires n >= 2.
InfluenceGraph graph_disconnected(int n, double c = 0.5);

/// Agents 0 and n-1 influence everyone else at 0.6 and receive no influence;
/// the middle agents exchange 0.1. Requires n >= 3.
InfluenceGraph graph_unrelenting(int n);

/// Two dense 0.5-blocks (split after ceil(n/2), i.e. first group '<=') with
/// weak 0.1 links across. Requires n >= 2.
InfluenceGraph graph_faint(int n);

/// Parses the plain-text edge-list format: '#' comments, a 'n=<count>'
/// header, then '<src> <dst> <weight>' lines. Unlisted pairs are 0 and the
/// diagonal is forced to 1. Throws GraphFileError with a line number on
/// malformed input, out-of-range weights, or duplicate edges.
InfluenceGraph load_graph(const std::filesystem::path& path);

/// Writes the same edge-list format load_graph reads (off-diagonal positive
/// entries only, ascending). Byte-deterministic.
void save_graph(const InfluenceGraph& graph, const std::filesystem::path& path);

enum class BeliefKind { uniform, mild, extreme, tripolar, explicit_list };
enum class GraphKind { clique, circular, disconnected, unrelenting, faint, file };

BeliefKind belief_kind_from_string(const std::string& s);
GraphKind graph_kind_from_string(const std::string& s);
std::string to_string(BeliefKind k);
std::string to_string(GraphKind k);

/// Declarative description of one scenario: which beliefs, which graph.
struct ScenarioSpec {
    BeliefKind belief_kind = BeliefKind::uniform;
    std::vector<double> explicit_beliefs;  // used when belief_kind == explicit_list
    GraphKind graph_kind = GraphKind::clique;
    std::string graph_file;  // used when graph_kind == file
    int n = 0;
    double strength = 0.5;  // C for the clique/circular/disconnected generators
};

BeliefConfig make_beliefs(const ScenarioSpec& spec);
InfluenceGraph make_graph(const ScenarioSpec& spec);

}  // namespace polarsim
