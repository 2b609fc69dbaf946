#pragma once

// Exact rank of sparse integer matrices, by Gaussian elimination over the
// rationals.

#include <gmpxx.h>

#include <cstddef>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace dgroup::linalg {

using SparseRow = std::vector<std::pair<std::size_t, long>>;

inline std::size_t eliminate(std::vector<std::map<std::size_t, mpq_class>> rows) {
  std::map<std::size_t, std::map<std::size_t, mpq_class>> pivots;
  for (auto& row : rows) {
    while (!row.empty()) {
      auto const lead = row.begin()->first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, std::move(row));
        break;
      }
      mpq_class factor = row.begin()->second / it->second.at(lead);
      for (auto const& [col, value] : it->second) {
        auto& cell = row[col];
        cell -= factor * value;
        if (cell == 0) {
          row.erase(col);
        }
      }
    }
  }
  return pivots.size();
}

// Rows and columns with a single entry are peeled off first; neither step
// causes fill-in, and on cube complexes they usually leave a small core.
inline std::size_t rational_rank(std::vector<SparseRow> const& input) {
  std::vector<std::unordered_map<std::size_t, long>> rows(input.size());
  std::unordered_map<std::size_t, std::unordered_set<std::size_t>> cols;
  for (std::size_t r = 0; r < input.size(); ++r) {
    for (auto [col, value] : input[r]) {
      rows[r][col] += value;
    }
    std::erase_if(rows[r], [](auto const& kv) { return kv.second == 0; });
    for (auto const& [col, value] : rows[r]) {
      cols[col].insert(r);
    }
  }
  std::vector<char> alive(rows.size(), 1);
  std::deque<std::size_t> row_queue;
  std::deque<std::size_t> col_queue;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    row_queue.push_back(r);
  }
  for (auto const& [col, members] : cols) {
    col_queue.push_back(col);
  }
  std::size_t rank = 0;
  auto drop_row = [&](std::size_t r) {
    alive[r] = 0;
    for (auto const& [col, value] : rows[r]) {
      auto& members = cols[col];
      members.erase(r);
      if (members.size() == 1) {
        col_queue.push_back(col);
      }
    }
    rows[r].clear();
  };
  while (!row_queue.empty() || !col_queue.empty()) {
    if (!row_queue.empty()) {
      auto r = row_queue.front();
      row_queue.pop_front();
      if (!alive[r]) {
        continue;
      }
      if (rows[r].empty()) {
        alive[r] = 0;
      } else if (rows[r].size() == 1) {
        // pivot on the lone entry: its column vanishes everywhere else
        auto const col = rows[r].begin()->first;
        ++rank;
        drop_row(r);
        for (auto other : cols[col]) {
          rows[other].erase(col);
          row_queue.push_back(other);
        }
        cols[col].clear();
      }
      continue;
    }
    auto col = col_queue.front();
    col_queue.pop_front();
    auto& members = cols[col];
    if (members.size() == 1) {
      // the only row meeting this column is independent of the rest
      ++rank;
      drop_row(*members.begin());
    }
  }
  std::vector<std::map<std::size_t, mpq_class>> core;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (alive[r] && !rows[r].empty()) {
      std::map<std::size_t, mpq_class> row;
      for (auto const& [col, value] : rows[r]) {
        row.emplace(col, value);
      }
      core.push_back(std::move(row));
    }
  }
  return rank + eliminate(std::move(core));
}

}  // namespace dgroup::linalg
