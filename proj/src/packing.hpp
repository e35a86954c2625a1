#pragma once

// Branch-and-bound for vertex-disjoint packings of weighted vertex sets. Shared by the
// tiling solvers and the local search.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "ytile/hypergraph.hpp"

namespace ytile::detail {

class PackingSearch {
public:
  struct Item {
    std::vector<Vertex> vertices;  // sorted
    std::int64_t weight = 1;
  };

  struct Outcome {
    std::vector<std::size_t> chosen;  // indices into the items passed in
    std::int64_t score = 0;
    bool exhausted = false;
    bool target_reached = false;
    std::uint64_t nodes = 0;
  };

  /// Score of a packing is sum(weight * scale) - penalty * |packing|. When every item has
  /// weight 1 and the same size, the counting and hitting-set bounds apply.
  PackingSearch(std::size_t n, std::vector<Item> items, std::int64_t scale, std::int64_t penalty)
      : n_(n), words_((n + 63) / 64), scale_(scale), penalty_(penalty) {
    order_.resize(items.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return items[a].vertices < items[b].vertices;
    });
    for (std::size_t i : order_) items_.push_back(std::move(items[i]));
    bits_.assign(items_.size() * words_, 0);
    uniform_ = true;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      for (Vertex v : items_[i].vertices) bits_[i * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
      if (items_[i].weight != 1 || items_[i].vertices.size() != items_.front().vertices.size()) {
        uniform_ = false;
      }
    }
    max_size_ = 0;
    for (const auto& it : items_) max_size_ = std::max(max_size_, it.vertices.size());
  }

  Outcome run(std::uint64_t budget, std::optional<std::int64_t> target = std::nullopt) {
    budget_ = budget;
    target_ = target;
    out_ = Outcome{};
    stop_ = false;
    best_chosen_.clear();
    best_score_ = 0;
    std::vector<std::uint32_t> avail(items_.size());
    for (std::size_t i = 0; i < avail.size(); ++i) avail[i] = static_cast<std::uint32_t>(i);
    std::vector<std::uint32_t> chosen;
    if (!target_ || *target_ > 0) {
      search(avail, chosen, 0);
    } else {
      out_.target_reached = true;
    }
    out_.score = best_score_;
    for (std::uint32_t i : best_chosen_) out_.chosen.push_back(order_[i]);
    std::sort(out_.chosen.begin(), out_.chosen.end());
    return out_;
  }

private:
  bool disjoint(std::uint32_t a, std::uint32_t b) const {
    for (std::size_t w = 0; w < words_; ++w) {
      if (bits_[a * words_ + w] & bits_[b * words_ + w]) return false;
    }
    return true;
  }

  std::int64_t item_score(std::uint32_t i) const { return items_[i].weight * scale_ - penalty_; }

  void offer(const std::vector<std::uint32_t>& chosen, std::int64_t score) {
    if (score > best_score_) {
      best_score_ = score;
      best_chosen_ = chosen;
      if (target_ && best_score_ >= *target_) {
        out_.target_reached = true;
        stop_ = true;
      }
    }
  }

  std::size_t live_vertices(const std::vector<std::uint32_t>& avail) const {
    std::vector<std::uint64_t> acc(words_, 0);
    for (std::uint32_t i : avail)
      for (std::size_t w = 0; w < words_; ++w) acc[w] |= bits_[i * words_ + w];
    std::size_t c = 0;
    for (auto w : acc) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Size of a greedy hitting set of the available items: disjoint items need distinct hits.
  std::size_t hitting_bound(const std::vector<std::uint32_t>& avail, std::size_t cap) const {
    std::vector<std::uint32_t> rest = avail;
    std::vector<std::uint32_t> count(n_);
    std::size_t hits = 0;
    while (!rest.empty() && hits < cap) {
      std::fill(count.begin(), count.end(), 0);
      for (std::uint32_t i : rest)
        for (Vertex v : items_[i].vertices) ++count[v];
      Vertex best = static_cast<Vertex>(std::max_element(count.begin(), count.end()) - count.begin());
      ++hits;
      std::erase_if(rest, [&](std::uint32_t i) {
        return std::binary_search(items_[i].vertices.begin(), items_[i].vertices.end(), best);
      });
    }
    return rest.empty() ? hits : cap;
  }

  void search(const std::vector<std::uint32_t>& avail, std::vector<std::uint32_t>& chosen,
              std::int64_t score) {
    if (stop_) return;
    if (++out_.nodes > budget_) {
      out_.exhausted = true;
      stop_ = true;
      return;
    }
    offer(chosen, score);
    if (avail.empty() || stop_) return;

    // Greedy completion for an incumbent.
    {
      std::vector<std::uint32_t> greedy = chosen;
      std::int64_t g = score;
      std::vector<std::uint32_t> picked;
      for (std::uint32_t i : avail) {
        bool ok = true;
        for (std::uint32_t j : picked) {
          if (!disjoint(i, j)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          picked.push_back(i);
          greedy.push_back(i);
          g += item_score(i);
        }
      }
      offer(greedy, g);
      if (stop_) return;
    }

    const std::size_t live = live_vertices(avail);
    std::int64_t bound;
    if (uniform_) {
      std::size_t count_bound = live / max_size_;
      if (score + static_cast<std::int64_t>(count_bound) * item_score(avail.front()) <= best_score_) return;
      count_bound = std::min(count_bound, hitting_bound(avail, count_bound));
      bound = score + static_cast<std::int64_t>(count_bound) * item_score(avail.front());
    } else {
      bound = score + static_cast<std::int64_t>(live) * scale_;
    }
    if (bound <= best_score_) return;

    const Vertex pivot = items_[avail.front()].vertices.front();
    std::size_t with_pivot = 0;
    while (with_pivot < avail.size() && items_[avail[with_pivot]].vertices.front() == pivot) ++with_pivot;

    std::vector<std::uint32_t> next;
    for (std::size_t idx = 0; idx < with_pivot && !stop_; ++idx) {
      const std::uint32_t item = avail[idx];
      next.clear();
      for (std::size_t j = with_pivot; j < avail.size(); ++j) {
        if (disjoint(item, avail[j])) next.push_back(avail[j]);
      }
      chosen.push_back(item);
      search(next, chosen, score + item_score(item));
      chosen.pop_back();
    }
    if (stop_) return;
    next.assign(avail.begin() + static_cast<std::ptrdiff_t>(with_pivot), avail.end());
    search(next, chosen, score);
  }

  std::size_t n_;
  std::size_t words_;
  std::int64_t scale_;
  std::int64_t penalty_;
  bool uniform_ = true;
  std::size_t max_size_ = 1;
  std::vector<std::size_t> order_;
  std::vector<Item> items_;
  std::vector<std::uint64_t> bits_;

  std::uint64_t budget_ = 0;
  std::optional<std::int64_t> target_;
  bool stop_ = false;
  Outcome out_;
  std::vector<std::uint32_t> best_chosen_;
  std::int64_t best_score_ = 0;
};

}  // namespace ytile::detail
