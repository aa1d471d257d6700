#include "tmac/planner.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tmac/errors.hpp"
#include "tmac/semantics.hpp"

namespace tmac {

namespace {

using Mask = std::vector<std::uint64_t>;

Mask make_mask(std::size_t bits) { return Mask((bits + 63) / 64, 0); }

void set_bit(Mask& m, std::size_t i) { m[i / 64] |= std::uint64_t(1) << (i % 64); }

bool covers(const Mask& big, const Mask& small) {
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (small[i] & ~big[i]) return false;
  }
  return true;
}

void apply_effects(Mask& m, const Mask& add, const Mask& del) {
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = (m[i] & ~del[i]) | add[i];
}

struct ActionInfo {
  ActionPtr action;
  Mask pre_s, pre_inv, pre_e, s_add, s_del, e_add, e_del;
};

struct Event {
  std::size_t inst;
  bool start;
};

/// Difference constraints over the integer grid indices of instance start
/// times (node 0 is the constant zero). Encodes k_i - k_j <= w; feasibility
/// and a concrete earliest assignment come from Bellman-Ford.
class GridStn {
 public:
  explicit GridStn(std::size_t instances) : n_(instances + 1) {}

  void add(std::size_t i, std::size_t j, BigInt w) { edges_.push_back({i, j, std::move(w)}); }

  bool feasible(std::vector<BigInt>* grid_out) const {
    // k_i - k_j <= w turns into dist(j) - dist(i) ... solved in negated
    // space: z = -k, edge i -> j of weight w bounds z_j <= z_i + w.
    const BigInt inf = BigInt(1) << 256;
    std::vector<BigInt> dist(n_, inf);
    dist[0] = 0;
    for (std::size_t round = 0; round < n_; ++round) {
      bool changed = false;
      for (const auto& e : edges_) {
        if (dist[e.i] == inf) continue;
        BigInt cand = dist[e.i] + e.w;
        if (cand < dist[e.j]) {
          dist[e.j] = std::move(cand);
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (const auto& e : edges_) {
      if (dist[e.i] != inf && dist[e.i] + e.w < dist[e.j]) return false;  // negative cycle
    }
    if (grid_out) {
      grid_out->assign(n_ - 1, 0);
      for (std::size_t i = 1; i < n_; ++i) (*grid_out)[i - 1] = -dist[i];
    }
    return true;
  }

 private:
  struct Edge {
    std::size_t i, j;
    BigInt w;
  };
  std::size_t n_;
  std::vector<Edge> edges_;
};

class Search {
 public:
  Search(const PlanningTask& task, const SearchLimits& limits)
      : task_(task), limits_(limits) {
    std::size_t n = 0;
    for (const auto& a : task.atoms) atom_index_[a] = n++;
    bits_ = n;

    auto to_mask = [&](const AtomSet& s) {
      Mask m = make_mask(bits_);
      for (const auto& a : s) set_bit(m, atom_index_.at(a));
      return m;
    };
    for (const auto& a : task.actions) {
      ActionInfo info;
      info.action = a;
      info.pre_s = to_mask(a->pre_s);
      info.pre_inv = to_mask(a->pre_inv);
      info.pre_e = to_mask(a->pre_e);
      info.s_add = to_mask(a->eff_s_add());
      info.s_del = to_mask(a->eff_s_del());
      info.e_add = to_mask(a->eff_e_add());
      info.e_del = to_mask(a->eff_e_del());
      actions_.push_back(std::move(info));
    }
    goal_ = to_mask(task.goal);
    state_ = to_mask(task.init);
  }

  SearchResult run() {
    SearchResult result;
    dfs();
    result.nodes = nodes_;
    if (found_) {
      result.status = SearchStatus::Solved;
      result.plan = std::move(*found_);
    } else {
      result.status = budget_hit_ ? SearchStatus::BudgetExceeded : SearchStatus::ExhaustedComplete;
    }
    return result;
  }

 private:
  /// The grid index bound from a strict order between two event times
  /// eps*k_a + c_a < eps*k_b + c_b, as an integer cap on k_a - k_b.
  BigInt order_bound(const Rat& c_a, const Rat& c_b) const {
    Rat q = (c_b - c_a) / limits_.epsilon;
    return q.is_integer() ? q.num() - 1 : q.floor();
  }

  bool schedulable(std::vector<BigInt>* grid_out) const {
    GridStn stn(inst_action_.size());
    for (std::size_t j = 0; j < inst_action_.size(); ++j) {
      const Rat& dur = actions_[inst_action_[j]].action->dur;
      Rat cap = (limits_.horizon - dur) / limits_.epsilon;
      BigInt hi = cap.floor();
      if (hi < 1) return false;
      stn.add(0, j + 1, -1);  // k_j >= 1
      stn.add(j + 1, 0, hi);  // ends within the horizon
    }
    for (std::size_t m = 0; m + 1 < seq_.size(); ++m) {
      const Event& a = seq_[m];
      const Event& b = seq_[m + 1];
      Rat c_a = a.start ? Rat(0) : actions_[inst_action_[a.inst]].action->dur;
      Rat c_b = b.start ? Rat(0) : actions_[inst_action_[b.inst]].action->dur;
      stn.add(a.inst + 1, b.inst + 1, order_bound(c_a, c_b));
    }
    return stn.feasible(grid_out);
  }

  Mask open_invariants() const {
    Mask m = make_mask(bits_);
    for (std::size_t j = 0; j < inst_action_.size(); ++j) {
      if (!inst_open_[j]) continue;
      const Mask& inv = actions_[inst_action_[j]].pre_inv;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] |= inv[i];
    }
    return m;
  }

  std::size_t goal_gap(const Mask& state) const {
    std::size_t missing = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
      std::uint64_t bits = goal_[i] & ~state[i];
      missing += static_cast<std::size_t>(__builtin_popcountll(bits));
    }
    return missing;
  }

  struct Candidate {
    bool start;
    std::size_t which;  // action index for starts, instance index for ends
    std::size_t gap;
  };

  bool dfs() {
    const bool all_closed =
        std::none_of(inst_open_.begin(), inst_open_.end(), [](char c) { return c != 0; });
    if (all_closed && covers(state_, goal_)) {
      emit_solution();
      return true;
    }

    std::vector<Candidate> cands;
    if (starts_ < limits_.max_steps) {
      for (std::size_t a = 0; a < actions_.size(); ++a) {
        if (!covers(state_, actions_[a].pre_s)) continue;
        Mask next = state_;
        apply_effects(next, actions_[a].s_add, actions_[a].s_del);
        cands.push_back({true, a, goal_gap(next)});
      }
    }
    for (std::size_t j = 0; j < inst_action_.size(); ++j) {
      if (!inst_open_[j]) continue;
      if (!covers(state_, actions_[inst_action_[j]].pre_e)) continue;
      Mask next = state_;
      apply_effects(next, actions_[inst_action_[j]].e_add, actions_[inst_action_[j]].e_del);
      cands.push_back({false, j, goal_gap(next)});
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& x, const Candidate& y) { return x.gap < y.gap; });

    for (const Candidate& c : cands) {
      if (++nodes_ > limits_.node_budget) {
        budget_hit_ = true;
        return false;
      }
      if (apply_candidate(c)) {
        if (dfs()) return true;
        undo_candidate(c);
        if (budget_hit_) return false;
      }
    }
    return false;
  }

  /// Applies one event after checking the consistency conditions it is
  /// responsible for; returns false (without changing anything) when the
  /// event is impossible here.
  bool apply_candidate(const Candidate& c) {
    Mask next = state_;
    std::size_t inst;
    if (c.start) {
      apply_effects(next, actions_[c.which].s_add, actions_[c.which].s_del);
      inst = inst_action_.size();
    } else {
      const ActionInfo& info = actions_[inst_action_[c.which]];
      apply_effects(next, info.e_add, info.e_del);
      inst = c.which;
    }

    saved_state_.push_back(state_);
    if (c.start) {
      inst_action_.push_back(c.which);
      inst_open_.push_back(1);
      ++starts_;
    } else {
      inst_open_[inst] = 0;
    }
    state_ = std::move(next);
    seq_.push_back({inst, c.start});

    // the running invariants must hold in the state right after the event
    if (!covers(state_, open_invariants()) || !schedulable(nullptr)) {
      undo_candidate(c);
      return false;
    }
    return true;
  }

  void undo_candidate(const Candidate& c) {
    seq_.pop_back();
    state_ = std::move(saved_state_.back());
    saved_state_.pop_back();
    if (c.start) {
      inst_action_.pop_back();
      inst_open_.pop_back();
      --starts_;
    } else {
      inst_open_[c.which] = 1;
    }
  }

  void emit_solution() {
    std::vector<BigInt> grid;
    if (!schedulable(&grid))
      throw Error(Errc::Internal, "planner: accepted event order lost schedulability");
    Plan plan;
    for (std::size_t j = 0; j < inst_action_.size(); ++j) {
      Rat t = Rat(grid[j], 1) * limits_.epsilon;
      plan.add(t, actions_[inst_action_[j]].action);
    }
    CheckReport check = check_plan(task_, plan);
    if (!check.solves)
      throw Error(Errc::Internal, "planner: emitted plan failed verification: " + check.str());
    found_ = std::move(plan);
  }

  const PlanningTask& task_;
  const SearchLimits& limits_;
  std::map<Atom, std::size_t> atom_index_;
  std::size_t bits_ = 0;
  std::vector<ActionInfo> actions_;
  Mask goal_;

  Mask state_;
  std::vector<Mask> saved_state_;
  std::vector<Event> seq_;
  std::vector<std::size_t> inst_action_;
  std::vector<char> inst_open_;
  std::size_t starts_ = 0;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
  std::optional<Plan> found_;
};

}  // namespace

SearchResult solve(const PlanningTask& task, const SearchLimits& limits) {
  if (!limits.epsilon.positive() || !limits.horizon.positive())
    throw Error(Errc::Model, "search limits must be positive");
  check_task(task);
  Search search(task, limits);
  return search.run();
}

}  // namespace tmac
