#pragma once

#include "branchlens/address.hpp"

namespace branchlens {

// One hardware-logged taken branch.
struct BranchRecord {
  Address source;
  Address target;
  bool predicted = false;
  bool kernel_mode = false;

  constexpr bool operator==(const BranchRecord&) const = default;
};

}  // namespace branchlens
