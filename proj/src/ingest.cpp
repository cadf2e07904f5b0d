#include "hetn2v/ingest.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unordered_set>
#include <vector>

#include "hetn2v/error.hpp"

namespace hetn2v {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

// Yields non-comment lines with their 1-based line numbers; strips CR.
class LineReader {
 public:
  LineReader(std::ifstream& in, std::string path) : in_(in), path_(std::move(path)) {}

  bool next(std::string& line, std::size_t& line_no) {
    while (std::getline(in_, line)) {
      ++count_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      line_no = count_;
      return true;
    }
    return false;
  }

 private:
  std::ifstream& in_;
  std::string path_;
  std::size_t count_ = 0;
};

}  // namespace

HetMultigraph load_graph(const std::string& edge_path,
                         const std::optional<std::string>& node_type_path,
                         const LoadOptions& options) {
  std::ifstream edges(edge_path);
  if (!edges) throw IoError("cannot open edge file " + edge_path);

  GraphBuilder builder;
  {
    LineReader reader(edges, edge_path);
    std::string line;
    std::size_t line_no = 0;
    bool skip = options.skip_edge_header;
    while (reader.next(line, line_no)) {
      if (skip) {
        skip = false;
        continue;
      }
      const auto fields = split_tabs(line);
      if (fields.size() != 3 && fields.size() != 4)
        throw ParseError(edge_path, line_no,
                         "expected src<TAB>dst<TAB>edge_type[<TAB>weight], got " +
                             std::to_string(fields.size()) + " fields");
      if (fields[0].empty() || fields[1].empty() || fields[2].empty())
        throw ParseError(edge_path, line_no, "empty field");
      double weight = 1.0;
      if (fields.size() == 4) {
        if (!parse_double(fields[3], weight))
          throw ParseError(edge_path, line_no, "bad weight '" + fields[3] + "'");
        if (!(weight > 0.0))
          throw ValidationError(edge_path + ":" + std::to_string(line_no) +
                                ": weight must be positive, got " + fields[3]);
      }
      builder.add_edge(fields[0], fields[1], fields[2], weight);
    }
  }

  if (node_type_path) {
    std::ifstream types(*node_type_path);
    if (!types) throw IoError("cannot open node type file " + *node_type_path);
    LineReader reader(types, *node_type_path);
    std::string line;
    std::size_t line_no = 0;
    bool skip = options.skip_type_header;
    std::unordered_set<std::string> seen;
    while (reader.next(line, line_no)) {
      if (skip) {
        skip = false;
        continue;
      }
      const auto fields = split_tabs(line);
      if (fields.size() != 2)
        throw ParseError(*node_type_path, line_no, "expected node<TAB>node_type");
      if (fields[0].empty() || fields[1].empty())
        throw ParseError(*node_type_path, line_no, "empty field");
      if (!builder.has_node(fields[0]))
        throw ValidationError(*node_type_path + ":" + std::to_string(line_no) +
                              ": unknown node '" + fields[0] + "'");
      if (!seen.insert(fields[0]).second)
        throw ValidationError(*node_type_path + ":" + std::to_string(line_no) +
                              ": duplicate type record for node '" + fields[0] + "'");
      builder.set_node_type(fields[0], fields[1]);
    }
  }
  return builder.build();
}

void write_walks(const WalkCorpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const Walk& walk : corpus.walks) {
    for (std::size_t i = 0; i < walk.nodes.size(); ++i) {
      if (i > 0) out << ' ';
      out << corpus.node_names[walk.nodes[i]];
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed on " + path);
}

namespace {

WalkCorpus read_walks_impl(const std::string& path, const HetMultigraph* g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open walk file " + path);
  WalkCorpus corpus;
  corpus.has_edge_trace = false;
  Vocabulary vocab;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Walk walk;
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) {
      if (g) {
        const auto id = g->node_vocab().find(token);
        if (!id)
          throw ValidationError(path + ":" + std::to_string(line_no) +
                                ": unknown node '" + token + "'");
        walk.nodes.push_back(*id);
      } else {
        walk.nodes.push_back(vocab.intern(token));
      }
    }
    corpus.walks.push_back(std::move(walk));
  }
  corpus.node_names = g ? g->node_vocab().names() : vocab.names();
  return corpus;
}

}  // namespace

WalkCorpus read_walks(const std::string& path) { return read_walks_impl(path, nullptr); }

WalkCorpus read_walks(const std::string& path, const HetMultigraph& g) {
  return read_walks_impl(path, &g);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_embeddings(const EmbeddingMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << m.names.size() << ' ' << m.dims << '\n';
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    out << m.names[i];
    const auto row = m.input_row(i);
    for (const double v : row) out << ' ' << format_double(v);
    out << '\n';
  }
  if (!out) throw IoError("write failed on " + path);
}

EmbeddingMatrix read_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file " + path);
  std::string header;
  if (!std::getline(in, header)) throw ParseError(path, 1, "missing header");
  std::istringstream hs(header);
  std::size_t rows = 0, dims = 0;
  if (!(hs >> rows >> dims)) throw ParseError(path, 1, "bad header '" + header + "'");

  EmbeddingMatrix m;
  m.dims = dims;
  m.names.reserve(rows);
  m.input.reserve(rows * dims);
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string name;
    ls >> name;
    m.names.push_back(name);
    std::string token;
    std::size_t got = 0;
    while (ls >> token) {
      double v = 0.0;
      if (!parse_double(token, v))
        throw ParseError(path, line_no, "bad value '" + token + "'");
      m.input.push_back(v);
      ++got;
    }
    if (got != dims)
      throw ParseError(path, line_no,
                       "expected " + std::to_string(dims) + " values, got " +
                           std::to_string(got));
  }
  if (m.names.size() != rows)
    throw ParseError(path, line_no,
                     "header announced " + std::to_string(rows) + " rows, found " +
                         std::to_string(m.names.size()));
  return m;
}

}  // namespace hetn2v
