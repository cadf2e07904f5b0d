#include "hetn2v/bias.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hetn2v/error.hpp"

namespace hetn2v {

namespace {

void check_positive(double value, const char* what) {
  if (!(value > 0.0))
    throw std::invalid_argument(std::string(what) + " must be positive, got " +
                                std::to_string(value));
}

std::vector<double> reciprocals(std::size_t type_count, const std::vector<double>& s) {
  if (s.size() != type_count * type_count)
    throw std::invalid_argument("switch matrix size does not match type count");
  std::vector<double> inv(s.size(), 1.0);
  for (std::size_t i = 0; i < type_count; ++i) {
    for (std::size_t j = 0; j < type_count; ++j) {
      if (i == j) continue;  // diagonal unused, same-type moves take factor 1
      check_positive(s[i * type_count + j], "switch parameter");
      inv[i * type_count + j] = 1.0 / s[i * type_count + j];
    }
  }
  return inv;
}

}  // namespace

SwitchModel SwitchModel::uniform(double s) {
  check_positive(s, "switch parameter s");
  SwitchModel m;
  m.kind_ = Kind::Uniform;
  m.inv_uniform_ = 1.0 / s;
  return m;
}

SwitchModel SwitchModel::pairwise_symmetric(std::size_t type_count, std::vector<double> s) {
  for (std::size_t i = 0; i < type_count; ++i)
    for (std::size_t j = i + 1; j < type_count; ++j)
      if (s[i * type_count + j] != s[j * type_count + i])
        throw std::invalid_argument("symmetric switch matrix has s[i][j] != s[j][i]");
  SwitchModel m;
  m.kind_ = Kind::PairwiseSymmetric;
  m.type_count_ = type_count;
  m.inv_pair_ = reciprocals(type_count, s);
  return m;
}

SwitchModel SwitchModel::pairwise_directed(std::size_t type_count, std::vector<double> s) {
  SwitchModel m;
  m.kind_ = Kind::PairwiseDirected;
  m.type_count_ = type_count;
  m.inv_pair_ = reciprocals(type_count, s);
  return m;
}

SwitchModel SwitchModel::special_set(std::vector<bool> special, double s_to_special,
                                     double s_from_special) {
  check_positive(s_to_special, "s_to_special");
  check_positive(s_from_special, "s_from_special");
  SwitchModel m;
  m.kind_ = Kind::SpecialSet;
  m.special_ = std::move(special);
  m.inv_to_special_ = 1.0 / s_to_special;
  m.inv_from_special_ = 1.0 / s_from_special;
  return m;
}

SwitchModel SwitchModel::from_tsv(const std::string& path, const Vocabulary& types) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open switch matrix file " + path);
  const std::size_t k = types.size();
  std::vector<double> s(k * k, 1.0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string from, to, value;
    if (!std::getline(ls, from, '\t') || !std::getline(ls, to, '\t') ||
        !std::getline(ls, value, '\t'))
      throw ParseError(path, line_no, "expected from<TAB>to<TAB>value");
    const auto fid = types.find(from);
    const auto tid = types.find(to);
    if (!fid) throw ParseError(path, line_no, "unknown type '" + from + "'");
    if (!tid) throw ParseError(path, line_no, "unknown type '" + to + "'");
    double v = 0.0;
    try {
      std::size_t pos = 0;
      v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError(path, line_no, "bad switch value '" + value + "'");
    }
    if (!(v > 0.0)) throw ParseError(path, line_no, "switch value must be positive");
    s[*fid * k + *tid] = v;
  }
  return pairwise_directed(k, std::move(s));
}

bool SwitchModel::is_identity() const {
  switch (kind_) {
    case Kind::Uniform:
      return inv_uniform_ == 1.0;
    case Kind::PairwiseSymmetric:
    case Kind::PairwiseDirected:
      for (std::size_t i = 0; i < inv_pair_.size(); ++i)
        if (inv_pair_[i] != 1.0) return false;
      return true;
    case Kind::SpecialSet:
      return inv_to_special_ == 1.0 && inv_from_special_ == 1.0;
  }
  return true;
}

BiasParams::BiasParams(double p, double q, SwitchModel node_switch, SwitchModel edge_switch)
    : p_(p),
      q_(q),
      node_switch_(std::move(node_switch)),
      edge_switch_(std::move(edge_switch)) {
  check_positive(p, "p");
  check_positive(q, "q");
  inv_p_ = 1.0 / p;
  inv_q_ = 1.0 / q;
}

}  // namespace hetn2v
