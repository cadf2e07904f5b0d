#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hetn2v {

// key<TAB>value run record written next to every output file. Holds the
// resolved parameters and input digests needed to reproduce the run.
class Manifest {
 public:
  void add(std::string key, std::string value);
  std::optional<std::string> get(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  void write(const std::string& path) const;
  static Manifest read(const std::string& path);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// FNV-1a over the raw bytes of a file, hex encoded.
std::string file_digest(const std::string& path);

inline constexpr const char* kToolName = "hetnode2vec";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace hetn2v
