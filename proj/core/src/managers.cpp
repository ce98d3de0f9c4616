#include "crossbench/managers.hpp"

#include <stdexcept>

namespace crossbench {

std::string_view to_string(ManagerKind kind) {
  switch (kind) {
    case ManagerKind::Keys:
      return "keys";
    case ManagerKind::Matrix:
      return "matrix";
    case ManagerKind::Tree:
      return "tree";
  }
  return "?";
}

ManagerKind parse_manager_kind(std::string_view text) {
  for (auto k : kAllManagerKinds) {
    if (text == to_string(k)) return k;
  }
  if (text == "Keys") return ManagerKind::Keys;
  if (text == "Matrix") return ManagerKind::Matrix;
  if (text == "Tree") return ManagerKind::Tree;
  throw std::invalid_argument("unknown manager '" + std::string(text) + "' (expected keys, matrix or tree)");
}

void validate(const StoreOptions& o) {
  if (o.compression_level < 0 || o.compression_level > 9) {
    throw std::invalid_argument("compression level must be within 0-9");
  }
  if (o.split_level < 0 || o.split_level > 255) throw std::invalid_argument("split level must be within 0-255");
  if (o.basket_size == 0) throw std::invalid_argument("basket size must be positive");
}

}  // namespace crossbench
