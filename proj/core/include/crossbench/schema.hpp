#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

namespace crossbench {

enum class AttributeKind : std::uint8_t { Float = 0, Int = 1 };

struct AttributeSpec {
  std::string name;
  std::uint8_t width = 0;  // 2, 4 or 8
  AttributeKind kind = AttributeKind::Float;

  friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

struct ClassSchema {
  std::string class_name;
  std::vector<AttributeSpec> attributes;

  /// Throws std::invalid_argument when a width is not 2/4/8 or a 2-byte
  /// attribute is declared float.
  void validate() const;

  friend bool operator==(const ClassSchema&, const ClassSchema&) = default;
};

/// Sum of attribute widths.
std::size_t schema_raw_size(const ClassSchema& schema);

/// Size of one element if every attribute were widened to a double.
std::size_t schema_all_double_size(const ClassSchema& schema);

// ---------------------------------------------------------------------------
// Compile-time description of an element class. Each persistent class
// specialises ClassTraits<T> with its name and an ordered tuple of Field
// descriptors; everything else (schemas, codecs, comparisons) is derived.

template <typename Class, typename Member>
struct Field {
  using class_type = Class;
  using member_type = Member;
  std::string_view name;
  Member Class::*ptr;
};

template <typename Class, typename Member>
constexpr Field<Class, Member> field(std::string_view name, Member Class::*ptr) {
  return {name, ptr};
}

template <typename T>
struct ClassTraits;  // specialised per element class

template <typename T>
concept Persistent = requires {
  { ClassTraits<T>::name } -> std::convertible_to<std::string_view>;
  ClassTraits<T>::fields;
};

template <Persistent T>
constexpr std::size_t attribute_count() {
  return std::tuple_size_v<std::remove_cvref_t<decltype(ClassTraits<T>::fields)>>;
}

/// Calls f(field_descriptor, index) for each attribute in schema order.
template <Persistent T, typename F>
constexpr void for_each_field(F&& f) {
  std::apply(
      [&](const auto&... fs) {
        std::size_t i = 0;
        (f(fs, i++), ...);
      },
      ClassTraits<T>::fields);
}

template <typename M>
constexpr AttributeSpec attribute_spec_of(std::string_view name) {
  static_assert(sizeof(M) == 2 || sizeof(M) == 4 || sizeof(M) == 8);
  static_assert(std::is_floating_point_v<M> || std::is_integral_v<M>);
  return AttributeSpec{std::string(name), static_cast<std::uint8_t>(sizeof(M)),
                       std::is_floating_point_v<M> ? AttributeKind::Float : AttributeKind::Int};
}

template <Persistent T>
ClassSchema schema_of() {
  ClassSchema s;
  s.class_name = std::string(ClassTraits<T>::name);
  for_each_field<T>([&](const auto& f, std::size_t) {
    using M = typename std::remove_cvref_t<decltype(f)>::member_type;
    s.attributes.push_back(attribute_spec_of<M>(f.name));
  });
  return s;
}

template <Persistent T>
constexpr std::size_t raw_size_of() {
  std::size_t total = 0;
  for_each_field<T>([&](const auto& f, std::size_t) {
    using M = typename std::remove_cvref_t<decltype(f)>::member_type;
    total += sizeof(M);
  });
  return total;
}

/// Byte width of attribute `attr` of T, or 0 when out of range.
template <Persistent T>
constexpr std::size_t attribute_width(std::size_t attr) {
  std::size_t w = 0;
  for_each_field<T>([&](const auto& f, std::size_t i) {
    using M = typename std::remove_cvref_t<decltype(f)>::member_type;
    if (i == attr) w = sizeof(M);
  });
  return w;
}

/// Field-exact comparison; returns the first differing attribute index or -1.
template <Persistent T>
int first_difference(const T& a, const T& b) {
  int diff = -1;
  for_each_field<T>([&](const auto& f, std::size_t i) {
    if (diff < 0 && !(a.*(f.ptr) == b.*(f.ptr))) diff = static_cast<int>(i);
  });
  return diff;
}

}  // namespace crossbench
