#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "qim/adjacency.hpp"

namespace qim {

enum class GraphFormat { adjacency_csv, edgelist };

GraphFormat graph_format_from_string(const std::string& s);

struct GraphReadOptions {
    GraphFormat format = GraphFormat::adjacency_csv;
    // Averages the two triangles instead of rejecting asymmetric input.
    bool symmetrize = false;
    // Node count, required for edgelist input.
    int nodes = 0;
};

/// Reads a graph file. adjacency-csv is a v x v comma-separated matrix with
/// an optional header row (detected by a non-numeric first row). edgelist is
/// "i j w" per line with 0-based indices; the weight defaults to 1 when
/// omitted and options.nodes must be set.
AdjacencyMatrix read_graph(const std::filesystem::path& path, const GraphReadOptions& options = {});
AdjacencyMatrix read_graph(std::istream& in, const GraphReadOptions& options = {});

void write_adjacency_csv(const AdjacencyMatrix& g, std::ostream& out);
void write_adjacency_csv(const AdjacencyMatrix& g, const std::filesystem::path& path);

struct ManifestEntry {
    std::filesystem::path path;
    char group = 'A';  // 'A' or 'B'
};

/// Parses a manifest CSV with columns path,group (header row optional).
/// Relative paths are resolved against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path);

}  // namespace qim
