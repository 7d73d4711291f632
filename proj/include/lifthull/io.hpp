#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lifthull/geometry.hpp"

namespace lifthull {

// Text format: "D N" header, then N rows of D rationals.  '#' starts a
// comment running to the end of the line, anywhere in the file.
inline void write_points(std::ostream& os, const Mat& pts) {
  if (pts.empty()) throw std::invalid_argument("point set: no points");
  os << pts[0].size() << ' ' << pts.size() << '\n';
  for (const auto& p : pts) {
    for (size_t j = 0; j < p.size(); ++j) os << (j ? " " : "") << p[j].str();
    os << '\n';
  }
}

inline Mat read_points(std::istream& is) {
  std::vector<std::string> toks;
  std::string line;
  while (std::getline(is, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) toks.push_back(std::move(tok));
  }
  if (toks.size() < 2) throw std::invalid_argument("point set: bad header");
  size_t d = 0, n = 0;
  try {
    d = std::stoul(toks[0]);
    n = std::stoul(toks[1]);
  } catch (const std::exception&) {
    throw std::invalid_argument("point set: bad header");
  }
  if (d == 0 || n == 0)
    throw std::invalid_argument("point set: empty dimensions");
  if (toks.size() != 2 + d * n)
    throw std::invalid_argument("point set: token count mismatch");
  Mat pts(n, Point(d));
  size_t k = 2;
  for (auto& p : pts)
    for (auto& c : p) c = Rational::parse(toks[k++]);
  return pts;
}

inline std::string points_dump(const Mat& pts) {
  std::ostringstream os;
  write_points(os, pts);
  return os.str();
}

inline Mat parse_points(const std::string& text) {
  std::istringstream is(text);
  return read_points(is);
}

}  // namespace lifthull
