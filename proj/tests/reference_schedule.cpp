#include "reference_schedule.hpp"

#include <algorithm>

namespace coopcache::fixtures {

namespace {

struct Entry {
  int recipient;
  int subset;  // digits, e.g. 2345
  int layer;
};

UserSet digits(int value) {
  UserSet s;
  for (; value > 0; value /= 10) s = s.with(value % 10);
  return s;
}

TransmissionSymbol symbol(int sender, std::vector<Entry> entries) {
  TransmissionSymbol sym;
  sym.sender = sender;
  for (const Entry& e : entries) {
    SubfileId id{e.recipient, e.layer, digits(e.subset)};  // d_k = k
    sym.components.push_back(id);
    sym.recipients.emplace_back(e.recipient, id);
  }
  std::sort(sym.components.begin(), sym.components.end());
  std::sort(sym.recipients.begin(), sym.recipients.end());
  return sym;
}

Slot slot(int group_a, int group_b, TransmissionSymbol a, TransmissionSymbol b) {
  Slot s;
  s.groups = {digits(group_a), digits(group_b)};
  s.user_symbols = {std::move(a), std::move(b)};
  return s;
}

}  // namespace

SystemParams example_params() { return SystemParams{6, 6, Rational(4), 2, std::nullopt}; }

DerivedParams example_derived() { return derive(example_params(), 2, Loads{2, 1}); }

DemandVector example_demands() { return DemandVector{{1, 2, 3, 4, 5, 6}}; }

std::vector<Slot> reference_cooperation_slots() {
  std::vector<Slot> slots;
  // Partition {1,2,3} {4,5,6}, layer 1.
  slots.push_back(slot(123, 456, symbol(2, {{1, 2345, 1}, {3, 1245, 1}}), symbol(5, {{4, 2356, 1}, {6, 2345, 1}})));
  slots.push_back(slot(123, 456, symbol(2, {{1, 2346, 1}, {3, 1246, 1}}), symbol(5, {{4, 1256, 1}, {6, 1245, 1}})));
  slots.push_back(slot(123, 456, symbol(1, {{2, 1346, 1}, {3, 1256, 1}}), symbol(4, {{5, 2346, 1}, {6, 1345, 1}})));
  slots.push_back(slot(123, 456, symbol(3, {{1, 2356, 1}, {2, 1356, 1}}), symbol(6, {{4, 1356, 1}, {5, 1346, 1}})));
  // Rows with a generic layer, for l = 1 and l = 2.
  for (int l = 1; l <= 2; ++l) {
    slots.push_back(slot(124, 356, symbol(2, {{1, 2456, l}, {4, 1235, l}}), symbol(5, {{3, 1456, l}, {6, 1235, l}})));
    slots.push_back(slot(146, 235, symbol(6, {{1, 3456, l}, {4, 1236, l}}), symbol(3, {{2, 3456, l}, {5, 1234, l}})));
    slots.push_back(slot(125, 346, symbol(1, {{2, 1456, l}, {5, 1236, l}}), symbol(4, {{3, 2456, l}, {6, 1234, l}})));
  }
  // Partition {1,2,3} {4,5,6}, layer 2, ending with the cross-layer residue.
  slots.push_back(slot(123, 456, symbol(3, {{1, 2345, 2}, {2, 1345, 2}}), symbol(4, {{5, 2346, 2}, {6, 2345, 2}})));
  slots.push_back(slot(123, 456, symbol(3, {{1, 2346, 2}, {2, 1346, 2}}), symbol(4, {{5, 1246, 2}, {6, 1245, 2}})));
  slots.push_back(slot(123, 456, symbol(2, {{1, 2356, 2}, {3, 1245, 2}}), symbol(5, {{4, 1356, 2}, {6, 1345, 2}})));
  slots.push_back(slot(123, 456, symbol(1, {{3, 1246, 2}, {2, 1356, 2}}), symbol(6, {{4, 1256, 2}, {5, 1346, 2}})));
  slots.push_back(slot(123, 456, symbol(1, {{3, 1256, 2}, {2, 1345, 1}}), symbol(6, {{5, 1246, 1}, {4, 2356, 2}})));
  return slots;
}

Schedule reference_schedule() {
  const DerivedParams derived = example_derived();
  const DemandVector demands = example_demands();
  return assemble_schedule(demands, derived, build_server_schedule(demands, derived), reference_cooperation_slots());
}

}  // namespace coopcache::fixtures
