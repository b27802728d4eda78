#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infw/common.hpp"
#include "infw/kernel_ridge.hpp"
#include "infw/rng.hpp"

namespace infw {

// `label idx:val idx:val ...` rows; indices 1-based and strictly increasing.
struct SparseRow {
  int label = 0;
  std::vector<std::pair<int, double>> features;
};

struct SparseDataset {
  std::vector<SparseRow> rows;
  int max_feature = 0;

  int n() const { return static_cast<int>(rows.size()); }

  FeatureMatrix to_dense() const {
    require(!rows.empty() && max_feature >= 1, "to_dense: empty dataset");
    Matrix X = Matrix::Zero(n(), max_feature);
    for (int i = 0; i < n(); ++i)
      for (const auto& [idx, val] : rows[i].features) X(i, idx - 1) = val;
    return FeatureMatrix(std::move(X));
  }

  std::vector<int> labels() const {
    std::vector<int> y(n());
    for (int i = 0; i < n(); ++i) y[i] = rows[i].label;
    return y;
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("parse error at line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

inline SparseDataset parse_libsvm(std::string_view text) {
  SparseDataset out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t col = 0;
    auto skip_ws = [&] {
      while (col < line.size() && std::isspace(static_cast<unsigned char>(line[col]))) ++col;
    };
    auto take_token = [&]() -> std::string_view {
      const std::size_t start = col;
      while (col < line.size() && !std::isspace(static_cast<unsigned char>(line[col]))) ++col;
      return line.substr(start, col - start);
    };

    skip_ws();
    if (col == line.size()) {  // blank or comment-only line
      if (eol == std::string_view::npos) break;
      pos = eol + 1;
      continue;
    }

    SparseRow row;
    {
      const std::size_t at = col;
      const std::string tok(take_token());
      std::size_t used = 0;
      try {
        row.label = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw ParseError(line_no, static_cast<int>(at + 1), "non-numeric label");
      }
      if (used != tok.size())
        throw ParseError(line_no, static_cast<int>(at + 1), "non-numeric label");
    }
    int last_index = 0;
    while (true) {
      skip_ws();
      if (col == line.size()) break;
      const std::size_t at = col;
      const std::string tok(take_token());
      const std::size_t colon = tok.find(':');
      if (colon == std::string::npos)
        throw ParseError(line_no, static_cast<int>(at + 1),
                         "expected index:value, got '" + tok + "'");
      int idx = 0;
      double val = 0.0;
      try {
        std::size_t used = 0;
        idx = std::stoi(tok.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
        const std::string vtok = tok.substr(colon + 1);
        val = std::stod(vtok, &used);
        if (used != vtok.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(line_no, static_cast<int>(at + 1),
                         "malformed index:value token '" + tok + "'");
      }
      if (idx <= last_index)
        throw ParseError(line_no, static_cast<int>(at + 1),
                         "feature indices must be strictly increasing");
      last_index = idx;
      row.features.emplace_back(idx, val);
      out.max_feature = std::max(out.max_feature, idx);
    }
    out.rows.push_back(std::move(row));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

inline std::string serialize_libsvm(const SparseDataset& data) {
  std::string out;
  char buf[64];
  for (const auto& row : data.rows) {
    out += std::to_string(row.label);
    for (const auto& [idx, val] : row.features) {
      std::snprintf(buf, sizeof buf, " %d:%.17g", idx, val);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

// Seeded partition of 0..n-1 into k folds with sizes differing by at most 1.
inline std::vector<std::vector<int>> kfold(int n, int k, std::uint64_t seed) {
  require(k >= 1 && k <= n, "kfold: need 1 <= k <= n");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  RngStream rng(seed, {0x6B666F6C64ULL});  // stream label "kfold"
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform_int(i + 1));
    std::swap(idx[i], idx[j]);
  }
  std::vector<std::vector<int>> folds(k);
  const int base = n / k;
  const int extra = n % k;
  int at = 0;
  for (int f = 0; f < k; ++f) {
    const int size = base + (f < extra ? 1 : 0);
    folds[f].assign(idx.begin() + at, idx.begin() + at + size);
    at += size;
  }
  return folds;
}

// Locale-independent number formatting, at most 12 significant digits.
inline std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline void write_csv(const CsvTable& table, std::ostream& os) {
  for (std::size_t c = 0; c < table.header.size(); ++c)
    os << (c ? "," : "") << table.header[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << '\n';
  }
}

inline void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  write_csv(table, f);
  if (!f.good()) throw std::runtime_error("write_csv: write failed for " + path);
}

inline CsvTable parse_csv(std::string_view text) {
  CsvTable out;
  std::istringstream ss{std::string(text)};
  std::string line;
  bool first = true;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos
                                             ? std::string::npos
                                             : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (first) {
      out.header = std::move(cells);
      first = false;
    } else {
      out.rows.push_back(std::move(cells));
    }
  }
  return out;
}

}  // namespace infw
