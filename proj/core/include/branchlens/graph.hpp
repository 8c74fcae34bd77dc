#pragma once

#include <set>
#include <utility>
#include <vector>

#include "branchlens/address.hpp"

namespace branchlens {

using EdgePair = std::pair<Address, Address>;
using NodeSet = std::set<Address>;
using EdgeSet = std::set<EdgePair>;

// Ground-truth and traced subgraphs as identity-labeled element sets.
struct GraphPair {
  NodeSet gt_nodes;
  EdgeSet gt_edges;
  NodeSet tr_nodes;
  EdgeSet tr_edges;

  bool operator==(const GraphPair&) const = default;
};

}  // namespace branchlens
