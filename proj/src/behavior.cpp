#include "amoebot/behavior.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "amoebot/repair.hpp"
#include "amoebot/rng.hpp"
#include "amoebot/shapes.hpp"

namespace amoebot {

namespace {

class DemandOnly final : public Behavior {
public:
  explicit DemandOnly(std::optional<double> delta) : delta_(delta) {}

  std::optional<ActionDescriptor> enabled_action(const SystemState&,
                                                 AxialCoord) override {
    ActionDescriptor a;
    a.kind = ActionDescriptor::Kind::NoopSpend;
    a.cost = delta_;
    return a;
  }

  bool perform(SystemState&, AxialCoord, const ActionDescriptor&) override {
    return true;
  }

private:
  std::optional<double> delta_;
};

class Reproduction final : public Behavior {
public:
  Reproduction(double cost, std::size_t max_size, std::uint64_t seed)
      : cost_(cost), max_size_(max_size), seed_(seed) {}

  std::optional<ActionDescriptor> enabled_action(const SystemState& s,
                                                 AxialCoord c) override {
    if (s.population() >= max_size_) return std::nullopt;
    std::vector<Direction> open;
    for (int d = 0; d < 6; ++d)
      if (!s.occupied(neighbor(c, Direction(d)))) open.push_back(Direction(d));
    if (open.empty()) return std::nullopt;
    SplitMix64 g(mix_seed(seed_, 0x9E0,
                          static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.q)),
                          static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.r)),
                          s.at(c).demand_index));
    ActionDescriptor a;
    a.kind = ActionDescriptor::Kind::Reproduce;
    a.dir = open[g.below(static_cast<std::uint32_t>(open.size()))];
    a.cost = cost_;
    return a;
  }

  bool perform(SystemState& s, AxialCoord c,
               const ActionDescriptor& action) override {
    AxialCoord u = neighbor(c, action.dir);
    if (s.occupied(u)) return false;
    Particle child;
    child.role = Role::Active;
    child.e_bat = 0.0;
    child.parent = opposite(action.dir);  // points back at the reproducer
    s.spawn(u, child);
    ++s.counters().reproductions;
    return true;
  }

private:
  double cost_;
  std::size_t max_size_;
  std::uint64_t seed_;
};

// Spiral-fill formation. Slots are the hexagon spiral anchored at the seed;
// settled slots always form a prefix of the spiral, so the next open slot is
// adjacent to the settled region's boundary. Unsettled particles that can
// leave without disconnecting the system follow the structure boundary
// (wall-following with entry-direction memory) until they stand on the next
// open slot and are absorbed.
class HexagonFormation final : public Behavior {
public:
  HexagonFormation(AxialCoord seed, double move_cost)
      : seed_(seed), move_cost_(move_cost) {}

  std::optional<ActionDescriptor> enabled_action(const SystemState& s,
                                                 AxialCoord c) override {
    absorb(s);
    if (settled_.count(c)) return std::nullopt;
    if (settled_.size() >= s.population()) return std::nullopt;
    refresh_cut_vertices(s);
    if (cut_vertices_.count(c)) return std::nullopt;

    Direction scan_from;
    auto remembered = entry_dir_.find(c);
    if (remembered != entry_dir_.end()) {
      scan_from = remembered->second;
    } else {
      auto anchor = first_occupied_dir(s, c);
      if (!anchor) return std::nullopt;
      scan_from = *anchor;
    }
    for (int i = 1; i <= 6; ++i) {
      Direction d = scan_from.rotated(i);
      AxialCoord u = neighbor(c, d);
      if (s.occupied(u)) continue;
      if (!adjacent_to_other(s, u, c)) continue;
      ActionDescriptor a;
      a.kind = ActionDescriptor::Kind::Move;
      a.dir = d;
      a.cost = move_cost_;
      return a;
    }
    return std::nullopt;
  }

  bool perform(SystemState& s, AxialCoord c,
               const ActionDescriptor& action) override {
    AxialCoord target = neighbor(c, action.dir);
    if (s.occupied(target)) return false;
    prune_on_move(s, c);
    s.relocate(c, target);
    entry_dir_.erase(c);
    entry_dir_[target] = opposite(action.dir);
    absorb(s);
    return true;
  }

  bool complete(const SystemState& s) const override {
    auto spiral = shapes::spiral_order(seed_, s.population());
    for (AxialCoord slot : spiral)
      if (!s.occupied(slot)) return false;
    return true;
  }

private:
  void absorb(const SystemState& s) {
    while (settled_.size() < s.population()) {
      if (spiral_.size() < settled_.size() + 1)
        spiral_ = shapes::spiral_order(seed_, s.population());
      AxialCoord slot = spiral_[settled_.size()];
      const Particle* p = s.find(slot);
      if (!p || p->crashed) break;
      settled_.insert(slot);
      entry_dir_.erase(slot);
    }
  }

  void refresh_cut_vertices(const SystemState& s) {
    if (cut_version_ == s.occupancy_version() && !cut_vertices_cold_) return;
    cut_vertices_ = articulation_points(s);
    cut_version_ = s.occupancy_version();
    cut_vertices_cold_ = false;
  }

  static std::optional<Direction> first_occupied_dir(const SystemState& s,
                                                     AxialCoord c) {
    for (int d = 0; d < 6; ++d)
      if (s.occupied(neighbor(c, Direction(d)))) return Direction(d);
    return std::nullopt;
  }

  static bool adjacent_to_other(const SystemState& s, AxialCoord u,
                                AxialCoord self) {
    for (int d = 0; d < 6; ++d) {
      AxialCoord nb = neighbor(u, Direction(d));
      if (nb != self && s.occupied(nb)) return true;
    }
    return false;
  }

  // Cut vertices of the occupied-node adjacency graph (Hopcroft-Tarjan).
  static std::set<AxialCoord> articulation_points(const SystemState& s) {
    std::set<AxialCoord> cuts;
    std::map<AxialCoord, int> disc, low;
    int timer = 0;
    struct Frame {
      AxialCoord node;
      AxialCoord parent;
      bool has_parent;
      int next_dir;
      int child_count;
    };
    for (const auto& [start, sp] : s.occupancy()) {
      if (disc.count(start)) continue;
      std::vector<Frame> stack;
      stack.push_back({start, start, false, 0, 0});
      disc[start] = low[start] = timer++;
      while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_dir < 6) {
          AxialCoord nb = neighbor(f.node, Direction(f.next_dir++));
          if (!s.occupied(nb)) continue;
          if (f.has_parent && nb == f.parent) continue;
          auto it = disc.find(nb);
          if (it != disc.end()) {
            low[f.node] = std::min(low[f.node], it->second);
            continue;
          }
          ++f.child_count;
          disc[nb] = low[nb] = timer++;
          stack.push_back({nb, f.node, true, 0, 0});
        } else {
          Frame done = f;
          stack.pop_back();
          if (!stack.empty()) {
            Frame& up = stack.back();
            low[up.node] = std::min(low[up.node], low[done.node]);
            if (up.has_parent && low[done.node] >= disc[up.node])
              cuts.insert(up.node);
          } else if (done.child_count > 1) {
            cuts.insert(done.node);  // DFS root with multiple subtrees
          }
        }
      }
    }
    return cuts;
  }

  AxialCoord seed_;
  double move_cost_;
  std::vector<AxialCoord> spiral_;
  std::set<AxialCoord> settled_;
  std::map<AxialCoord, Direction> entry_dir_;
  std::set<AxialCoord> cut_vertices_;
  std::uint64_t cut_version_ = 0;
  bool cut_vertices_cold_ = true;
};

}  // namespace

std::unique_ptr<Behavior> demand_only_behavior(std::optional<double> delta) {
  return std::make_unique<DemandOnly>(delta);
}

std::unique_ptr<Behavior> hexagon_formation_behavior(AxialCoord seed_coord,
                                                     double move_cost) {
  return std::make_unique<HexagonFormation>(seed_coord, move_cost);
}

std::unique_ptr<Behavior> reproduction_behavior(double repro_cost,
                                                std::size_t max_size,
                                                std::uint64_t seed) {
  return std::make_unique<Reproduction>(repro_cost, max_size, seed);
}

}  // namespace amoebot
