#include "crossbench/schema.hpp"

#include <stdexcept>

namespace crossbench {

void ClassSchema::validate() const {
  for (const auto& a : attributes) {
    if (a.width != 2 && a.width != 4 && a.width != 8) {
      throw std::invalid_argument(class_name + "." + a.name + ": width must be 2, 4 or 8");
    }
    if (a.width == 2 && a.kind != AttributeKind::Int) {
      throw std::invalid_argument(class_name + "." + a.name + ": 2-byte attributes must be integers");
    }
  }
}

std::size_t schema_raw_size(const ClassSchema& schema) {
  std::size_t total = 0;
  for (const auto& a : schema.attributes) total += a.width;
  return total;
}

std::size_t schema_all_double_size(const ClassSchema& schema) { return 8 * schema.attributes.size(); }

}  // namespace crossbench
