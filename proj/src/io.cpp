#include "hyperbh/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hyperbh {
namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

// Strips comments and a trailing CR; returns the whitespace-split tokens.
std::vector<std::string> split_line(std::string line) {
  if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> out;
  std::istringstream ss(line);
  for (std::string tok; ss >> tok;) out.push_back(std::move(tok));
  return out;
}

std::unordered_map<std::string, Node> index_of(const std::vector<std::string>& tokens) {
  std::unordered_map<std::string, Node> idx;
  for (std::size_t i = 0; i < tokens.size(); ++i) idx.emplace(tokens[i], static_cast<Node>(i));
  return idx;
}

}  // namespace

LoadedHypergraph load_hyperedge_list(const std::filesystem::path& path, const LoadOptions& opts) {
  auto in = open_in(path);
  LoadedHypergraph out;
  std::unordered_map<std::string, Node> idx;
  std::vector<std::vector<Node>> edges;
  for (std::string line; std::getline(in, line);) {
    const auto toks = split_line(line);
    if (toks.empty()) continue;
    std::vector<Node> e;
    e.reserve(toks.size());
    for (const auto& t : toks) {
      auto [it, fresh] = idx.emplace(t, static_cast<Node>(out.tokens.size()));
      if (fresh) out.tokens.push_back(t);
      e.push_back(it->second);
    }
    std::sort(e.begin(), e.end());
    const std::size_t before = e.size();
    e.erase(std::unique(e.begin(), e.end()), e.end());
    out.repeated_tokens += before - e.size();
    if (e.size() < 2) {
      ++out.dropped_lines;
      continue;
    }
    edges.push_back(std::move(e));
  }
  if (edges.empty()) throw std::runtime_error(path.string() + ": no hyperedges");
  out.graph = Hypergraph::from_edges(out.tokens.size(), edges, opts.merge_duplicate_edges);
  return out;
}

void save_hyperedge_list(const std::filesystem::path& path, const Hypergraph& h,
                         const std::vector<std::string>& tokens) {
  if (!tokens.empty() && tokens.size() != h.num_nodes()) {
    throw std::invalid_argument("save_hyperedge_list: token count does not match node count");
  }
  auto out = open_out(path);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    bool first = true;
    for (Node v : h.edge(e)) {
      if (!first) out << ' ';
      first = false;
      if (tokens.empty()) {
        out << v;
      } else {
        out << tokens[v];
      }
    }
    out << '\n';
  }
}

Partition load_partition(const std::filesystem::path& path, const std::vector<std::string>& tokens) {
  auto in = open_in(path);
  const auto idx = index_of(tokens);
  std::vector<std::pair<Node, int>> rows;
  std::size_t n = tokens.size();
  for (std::string line; std::getline(in, line);) {
    const auto toks = split_line(line);
    if (toks.empty()) continue;
    if (toks.size() != 2) throw std::runtime_error(path.string() + ": expected 'token label', got '" + line + "'");
    Node node = 0;
    if (tokens.empty()) {
      node = static_cast<Node>(std::stol(toks[0]));
      if (node < 0) throw std::runtime_error(path.string() + ": negative node index");
      n = std::max(n, static_cast<std::size_t>(node) + 1);
    } else {
      const auto it = idx.find(toks[0]);
      if (it == idx.end()) throw std::runtime_error(path.string() + ": unknown node token '" + toks[0] + "'");
      node = it->second;
    }
    const int label = std::stoi(toks[1]);
    if (label < 0) throw std::runtime_error(path.string() + ": negative label");
    rows.emplace_back(node, label);
  }
  if (rows.empty()) throw std::runtime_error(path.string() + ": empty partition file");
  std::vector<int> labels(n, -1);
  for (const auto& [node, label] : rows) labels[node] = label;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] < 0) throw std::runtime_error(path.string() + ": node " + std::to_string(i) + " has no label");
  }
  return Partition::from_labels(std::move(labels));
}

void save_partition(const std::filesystem::path& path, const Partition& p, const std::vector<std::string>& tokens) {
  if (!tokens.empty() && tokens.size() != p.size()) {
    throw std::invalid_argument("save_partition: token count does not match partition size");
  }
  auto out = open_out(path);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (tokens.empty()) {
      out << i;
    } else {
      out << tokens[i];
    }
    out << ' ' << p.labels[i] << '\n';
  }
}

NamedLabels load_named_labels(const std::filesystem::path& path, const std::vector<std::string>& tokens) {
  auto in = open_in(path);
  const auto idx = index_of(tokens);
  NamedLabels out;
  out.labels.assign(tokens.size(), -1);
  std::unordered_map<std::string, int> name_id;
  for (std::string line; std::getline(in, line);) {
    const auto toks = split_line(line);
    if (toks.empty()) continue;
    if (toks.size() < 2) throw std::runtime_error(path.string() + ": expected 'token label', got '" + line + "'");
    const auto it = idx.find(toks[0]);
    if (it == idx.end()) continue;  // metadata may list nodes without hyperedges
    auto [nit, fresh] = name_id.emplace(toks[1], static_cast<int>(out.names.size()));
    if (fresh) out.names.push_back(toks[1]);
    out.labels[it->second] = nit->second;
  }
  for (int v : out.labels) out.missing += v < 0 ? 1 : 0;
  return out;
}

}  // namespace hyperbh
