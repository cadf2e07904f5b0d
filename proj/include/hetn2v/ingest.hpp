#pragma once

#include <optional>
#include <string>

#include "hetn2v/graph.hpp"
#include "hetn2v/sgns.hpp"
#include "hetn2v/walk.hpp"

namespace hetn2v {

struct LoadOptions {
  bool skip_edge_header = false;  // drop the first non-comment line
  bool skip_type_header = false;
};

// Edge file: src<TAB>dst<TAB>edge_type[<TAB>weight], weight defaults to 1.
// Node-type file: node<TAB>type; nodes it does not mention keep the default
// type, nodes unknown to the edge file are an error. '#' starts a comment
// line. Ids are assigned in first-appearance order, so identical files load
// to identical graphs.
HetMultigraph load_graph(const std::string& edge_path,
                         const std::optional<std::string>& node_type_path = {},
                         const LoadOptions& options = {});

// One walk per line, external node names separated by single spaces.
void write_walks(const WalkCorpus& corpus, const std::string& path);

// Vocabulary is rebuilt from the file tokens in first-appearance order.
WalkCorpus read_walks(const std::string& path);

// Resolves tokens against the graph's node vocabulary instead; unknown
// names are a validation error.
WalkCorpus read_walks(const std::string& path, const HetMultigraph& g);

// Header "<rows> <dims>", then "<name> <v1> ... <vd>" per row in NodeId
// order, shortest round-trip float formatting.
void write_embeddings(const EmbeddingMatrix& m, const std::string& path);

// Reads the published (input) vectors back; output rows come back empty.
EmbeddingMatrix read_embeddings(const std::string& path);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace hetn2v
