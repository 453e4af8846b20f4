#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "qcomm/param_scalar.hpp"

namespace qcomm {

/// Incremental row echelon form over a field, for sparse vectors whose
/// coordinates are ordered by Compare. Each stored row has its pivot at its
/// greatest coordinate, normalized to 1, and remembers how it was built from
/// the inserted vectors. The normal form of a vector (descending sweep) is the
/// unique representative of its coset avoiding all pivot coordinates.
template <class Key, class F, class Compare = std::less<Key>>
class LeadingEchelon {
 public:
  using Vec = std::vector<std::pair<Key, F>>;
  using Combo = std::map<int, F>;  // insertion id -> coefficient

  struct Insertion {
    bool independent = false;
    /// When dependent: coefficients c_i with sum c_i v_i = 0, c_id = 1.
    Combo dependency;
    F pivot{};  // pivot value before normalization (independent case)
  };

  /// Inserts v under the next insertion id.
  Insertion insert(const Vec& v) {
    int id = next_id_++;
    Combo combo;
    Work w = reduce_work(v, &combo);
    // combo holds c_i with v = residual + sum c_i v_i
    Insertion res;
    if (w.empty()) {
      res.dependency[id] = F(1);
      for (auto& [i, c] : combo) res.dependency[i] = -c;
      return res;
    }
    res.independent = true;
    auto lead = std::prev(w.end());
    F piv = lead->second;
    res.pivot = piv;
    F inv = F(1) / piv;
    Row row;
    row.pivot = lead->first;
    for (auto& [k, c] : w) row.entries.emplace_back(k, c * inv);
    Combo rc;
    rc[id] = inv;
    for (auto& [i, c] : combo) rc[i] = -c * inv;
    row.combo = std::move(rc);
    rows_.emplace(row.pivot, std::move(row));
    return res;
  }

  /// Normal form of v; optionally the coefficients c_i with v = nf + sum c_i v_i.
  Vec reduce(const Vec& v, Combo* combo = nullptr) const {
    Combo local;
    Work w = reduce_work(v, combo ? combo : &local);
    Vec out(w.begin(), w.end());
    return out;
  }

  bool in_span(const Vec& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  int inserted() const { return next_id_; }

 private:
  using Work = std::map<Key, F, Compare>;
  struct Row {
    Key pivot;
    Vec entries;  // ascending, last is the pivot with value 1
    Combo combo;
  };

  Work reduce_work(const Vec& v, Combo* combo) const {
    Work w;
    for (const auto& [k, c] : v) {
      if (c == F(0)) continue;
      auto [it, fresh] = w.try_emplace(k, c);
      if (!fresh) {
        it->second += c;
        if (it->second == F(0)) w.erase(it);
      }
    }
    if (rows_.empty() || w.empty()) return w;
    auto it = w.end();
    while (it != w.begin()) {
      --it;
      auto r = rows_.find(it->first);
      if (r == rows_.end()) continue;
      Key cur = it->first;
      F c = it->second;
      const Row& row = r->second;
      w.erase(it);
      for (std::size_t q = 0; q + 1 < row.entries.size(); ++q) {
        const auto& [k, rv] = row.entries[q];
        auto [jt, fresh] = w.try_emplace(k, -(c * rv));
        if (!fresh) {
          jt->second -= c * rv;
          if (jt->second == F(0)) w.erase(jt);
        }
      }
      for (const auto& [i, rc] : row.combo) {
        auto [jt, fresh] = combo->try_emplace(i, c * rc);
        if (!fresh) {
          jt->second += c * rc;
          if (jt->second == F(0)) combo->erase(jt);
        }
      }
      it = w.lower_bound(cur);  // keys above cur are already reduced
    }
    return w;
  }

  std::map<Key, Row, Compare> rows_;
  int next_id_ = 0;
};

/// Rank of a dense rational matrix.
int rational_rank(std::vector<std::vector<Rational>> rows);

}  // namespace qcomm
