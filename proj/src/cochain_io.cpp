#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cubetest/cochain.hpp"
#include "cubetest/errors.hpp"

namespace cubetest {

void write_cochain(std::ostream& os, const Cochain& f, std::span<const std::string> comments) {
  os << "CUBECHAIN n=" << f.n() << " d=" << f.dim() << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
  std::string line;
  for_each_cell(f.n(), f.dim(), [&](std::uint64_t idx, const Cell& cell) {
    line.clear();
    for (Vertex v : cell.ids()) {
      line += std::to_string(v);
      line += ' ';
    }
    line += f[idx].is_minus() ? "-1\n" : "+1\n";
    os << line;
  });
}

namespace {

int parse_header_field(const std::string& token, const std::string& key, std::size_t line) {
  if (token.rfind(key + "=", 0) != 0) throw ParseError(line, "expected '" + key + "=<int>' in header, got '" + token + "'");
  try {
    std::size_t used = 0;
    const int v = std::stoi(token.substr(key.size() + 1), &used);
    if (used != token.size() - key.size() - 1) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad integer in '" + token + "'");
  }
}

}  // namespace

CochainFile read_cochain(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line)) throw ParseError(1, "empty input");
  ++lineno;
  std::istringstream header(line);
  std::string magic, ntok, dtok, extra;
  header >> magic >> ntok >> dtok;
  if (magic != "CUBECHAIN") throw ParseError(lineno, "expected 'CUBECHAIN' header");
  if (header >> extra) throw ParseError(lineno, "trailing text in header");
  const int n = parse_header_field(ntok, "n", lineno);
  const int d = parse_header_field(dtok, "d", lineno);
  if (d < 0 || d > kMaxDim) throw ParseError(lineno, "dimension must be 0..3");
  if (n < corners_of(d) || n > kMaxVertices) throw ParseError(lineno, "vertex count out of range for d=" + std::to_string(d));

  CochainFile file{{}, Cochain(n, d)};
  const CellIndex index(n, d);
  std::vector<std::uint64_t> seen((index.size() + 63) / 64, 0);
  std::uint64_t filled = 0;
  const auto k = static_cast<std::size_t>(corners_of(d));
  std::vector<Vertex> ids(k);

  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      file.comments.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1));
      continue;
    }
    std::istringstream row(line);
    for (std::size_t t = 0; t < k; ++t) {
      if (!(row >> ids[t])) throw ParseError(lineno, "expected " + std::to_string(k) + " vertex ids");
    }
    std::string value;
    if (!(row >> value)) throw ParseError(lineno, "missing value");
    if (value != "+1" && value != "-1") throw ParseError(lineno, "value must be +1 or -1, got '" + value + "'");
    if (row >> extra) throw ParseError(lineno, "trailing text");
    std::uint64_t idx = 0;
    try {
      idx = index.index(Cell(d, ids));
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
    const std::uint64_t mask = std::uint64_t{1} << (idx & 63);
    if (seen[idx >> 6] & mask) throw ParseError(lineno, "cell listed twice");
    seen[idx >> 6] |= mask;
    ++filled;
    file.chain.set(idx, value == "-1" ? Sign::minus() : Sign::plus());
  }
  if (filled != index.size()) {
    throw ParseError(lineno, "cochain is not total: " + std::to_string(index.size() - filled) + " cells missing");
  }
  return file;
}

}  // namespace cubetest
