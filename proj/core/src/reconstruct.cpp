#include "branchlens/reconstruct.hpp"

#include <optional>

#include <fmt/format.h>

#include "branchlens/error.hpp"

namespace branchlens {

std::vector<BranchRecord> filter_user_space(std::span<const BranchRecord> trace,
                                            AddressRange user_region) {
  std::vector<BranchRecord> out;
  out.reserve(trace.size());
  for (const BranchRecord& r : trace) {
    if (user_region.contains(r.source) && user_region.contains(r.target)) out.push_back(r);
  }
  return out;
}

namespace {

class PathBuilder {
public:
  explicit PathBuilder(const StaticCfg& cfg) : cfg_(cfg), region_(cfg.user_region()) {}

  bool is_real(Address node) const { return region_.contains(node); }

  Address source_node(Address a) const {
    if (!is_real(a)) return a;
    const BasicBlock* b = cfg_.block_containing(a);
    if (!b) throw Error(ErrorCode::UnmappedAddress, to_hex(a));
    return b->start;
  }

  Address target_node(Address a) const {
    if (!is_real(a)) return a;
    const BasicBlock* b = cfg_.block_containing(a);
    if (!b) throw Error(ErrorCode::UnmappedAddress, to_hex(a));
    if (b->start != a) throw Error(ErrorCode::MidBlockTarget, to_hex(a));
    return a;
  }

  void push(Address node) {
    seq_.push_back(node);
    if (is_real(node)) last_real_ = node;
  }

  std::optional<Address> current() const {
    return seq_.empty() ? std::nullopt : std::optional(seq_.back());
  }

  // Appends the silent chain after `from` up to and including `to`.
  void bridge(Address from, Address to) {
    Address x = from;
    std::size_t steps = 0;
    while (x != to) {
      auto next = cfg_.exits(x).silent_successor();
      if (!next || ++steps > cfg_.blocks().size()) {
        throw Error(ErrorCode::AmbiguousFallThrough,
                    fmt::format("{} (bridging {} -> {})", to_hex(x), to_hex(from), to_hex(to)));
      }
      push(*next);
      x = *next;
    }
  }

  // Moves to source node `s`, bridging from the last real block if needed.
  void arrive(Address s) {
    auto cur = current();
    if (!cur) {
      push(s);
      return;
    }
    if (*cur == s) return;
    if (!is_real(s)) {
      push(s);
      return;
    }
    const std::optional<Address> from = is_real(*cur) ? cur : last_real_;
    if (!from) {
      push(s);
    } else if (!is_real(*cur) && *from == s) {
      push(s);
    } else {
      bridge(*from, s);
    }
  }

  // Follows silent successors until the program ends.
  void finish() {
    auto cur = current();
    if (!cur) return;
    std::optional<Address> x = is_real(*cur) ? cur : last_real_;
    if (!x) return;
    std::size_t steps = 0;
    while (auto next = cfg_.exits(*x).silent_successor()) {
      if (++steps > cfg_.blocks().size()) {
        throw Error(ErrorCode::AmbiguousFallThrough,
                    fmt::format("{} (fall-through cycle after last record)", to_hex(*x)));
      }
      push(*next);
      x = next;
    }
  }

  ExecutedSubgraph take() {
    ExecutedSubgraph sub;
    sub.nodes.insert(seq_.begin(), seq_.end());
    for (std::size_t i = 1; i < seq_.size(); ++i) sub.edges.emplace(seq_[i - 1], seq_[i]);
    sub.block_sequence = std::move(seq_);
    return sub;
  }

private:
  const StaticCfg& cfg_;
  AddressRange region_;
  std::vector<Address> seq_;
  std::optional<Address> last_real_;
};

}  // namespace

ExecutedSubgraph reconstruct(std::span<const BranchRecord> trace, const StaticCfg& cfg,
                             ReconstructOptions options) {
  PathBuilder path(cfg);
  const bool from_entry = options.completeness == TraceCompleteness::FromEntry;

  if (trace.empty()) {
    if (from_entry) {
      path.push(cfg.entry());
      path.finish();
    }
    return path.take();
  }

  const Address first = path.source_node(trace.front().source);
  if (from_entry && path.is_real(first)) {
    path.push(cfg.entry());
    path.bridge(cfg.entry(), first);
  } else {
    path.push(first);
  }

  for (const BranchRecord& rec : trace) {
    const Address s = path.source_node(rec.source);
    const Address t = path.target_node(rec.target);
    path.arrive(s);
    path.push(t);
  }
  path.finish();
  return path.take();
}

ExecutedSubgraph subgraph_of(const ExecutionOracle& oracle) {
  ExecutedSubgraph sub;
  sub.nodes.insert(oracle.executed_blocks.begin(), oracle.executed_blocks.end());
  sub.edges = oracle.executed_edges;
  sub.block_sequence = oracle.executed_blocks;
  return sub;
}

GraphPair pair_of(const ExecutedSubgraph& gt, const ExecutedSubgraph& traced) {
  return GraphPair{gt.nodes, gt.edges, traced.nodes, traced.edges};
}

GraphPair project_to_ground_truth(const ExecutedSubgraph& traced, const ExecutionOracle& oracle) {
  GraphPair pair;
  pair.gt_nodes.insert(oracle.executed_blocks.begin(), oracle.executed_blocks.end());
  pair.gt_edges = oracle.executed_edges;
  pair.tr_nodes = traced.nodes;
  pair.tr_edges = traced.edges;
  return pair;
}

}  // namespace branchlens
