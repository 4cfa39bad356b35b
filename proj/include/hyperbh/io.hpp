#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hyperbh/hypergraph.hpp"

namespace hyperbh {

struct LoadOptions {
  bool merge_duplicate_edges = false;
};

struct LoadedHypergraph {
  Hypergraph graph;
  std::vector<std::string> tokens;  // tokens[i] is the file name of node i
  std::size_t dropped_lines = 0;    // lines with fewer than two distinct nodes
  std::size_t repeated_tokens = 0;  // node tokens removed by in-line dedup
};

// One hyperedge per line, whitespace-separated node tokens. '#' starts a
// comment. Nodes are numbered in order of first appearance.
LoadedHypergraph load_hyperedge_list(const std::filesystem::path& path, const LoadOptions& opts = {});
// Writes tokens when given (one per node), node indices otherwise.
void save_hyperedge_list(const std::filesystem::path& path, const Hypergraph& h,
                         const std::vector<std::string>& tokens = {});

// "token label" per line with integer labels. When tokens is empty the node
// tokens must be the indices 0..n-1.
Partition load_partition(const std::filesystem::path& path, const std::vector<std::string>& tokens = {});
void save_partition(const std::filesystem::path& path, const Partition& p,
                    const std::vector<std::string>& tokens = {});

// Ground-truth metadata with arbitrary string labels ("token class").
// Label ids follow first appearance; nodes missing from the file get label -1
// in `labels` and are reported in `missing`.
struct NamedLabels {
  std::vector<int> labels;
  std::vector<std::string> names;
  std::size_t missing = 0;
};
NamedLabels load_named_labels(const std::filesystem::path& path, const std::vector<std::string>& tokens);

}  // namespace hyperbh
