// Shared by the unit and acceptance binaries: corpus loading.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "uf1/verify.hpp"

namespace uf1::support {

struct CorpusEntry {
  std::string name;
  std::string expect;  // "sat", "unsat" or empty
  Formula formula;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<CorpusEntry> out;
  for (const auto& p : paths) {
    std::string text = slurp(p);
    CorpusEntry c;
    c.name = std::filesystem::path(p).stem().string();
    auto at = text.find("# expect: ");
    if (at != std::string::npos) {
      auto end = text.find('\n', at);
      c.expect = text.substr(at + 10, end - at - 10);
    }
    c.formula = parse(text);
    out.push_back(std::move(c));
  }
  return out;
}

using uf1::duf1_disagreement;
using uf1::muf1_disagreement;

}  // namespace uf1::support
