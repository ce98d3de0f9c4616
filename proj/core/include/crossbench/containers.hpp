#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crossbench/schema.hpp"

namespace crossbench {

/// The four container disciplines. Command-line names follow the classic
/// column headings: stl, c, obj, clones.
enum class ContainerKind : std::uint8_t { ValueSeq, DoublingArray, IndirectArray, SlotArray };

inline constexpr std::array<ContainerKind, 4> kAllContainerKinds = {
    ContainerKind::ValueSeq, ContainerKind::DoublingArray, ContainerKind::IndirectArray,
    ContainerKind::SlotArray};

std::string_view to_string(ContainerKind kind);
std::string_view short_name(ContainerKind kind);  // stl / c / obj / clones
ContainerKind parse_container_kind(std::string_view text);

/// Abstract sequence of one element class: a write side (clear, add) and a
/// read side (size, get). Elements are always copied in.
template <typename T>
class Sequence {
 public:
  using value_type = T;

  virtual ~Sequence() = default;

  virtual void clear() = 0;
  virtual void add(const T& element) = 0;

  virtual std::size_t size() const = 0;
  /// Throws std::out_of_range when i >= size().
  virtual const T& get(std::size_t i) const = 0;

  virtual ContainerKind kind() const = 0;

  bool empty() const { return size() == 0; }

 protected:
  void check_index(std::size_t i) const {
    if (i >= size()) {
      throw std::out_of_range("sequence index " + std::to_string(i) + " out of range (size " +
                              std::to_string(size()) + ")");
    }
  }
};

// std::vector by value.
template <typename T>
class ValueSeq final : public Sequence<T> {
 public:
  void clear() override { items_.clear(); }
  void add(const T& element) override { items_.push_back(element); }
  std::size_t size() const override { return items_.size(); }
  const T& get(std::size_t i) const override {
    this->check_index(i);
    return items_[i];
  }
  ContainerKind kind() const override { return ContainerKind::ValueSeq; }

  std::span<const T> view() const { return items_; }

 private:
  std::vector<T> items_;
};

/// Heap array whose capacity starts at 16 and doubles whenever it is full.
template <typename T>
class DoublingArray final : public Sequence<T> {
 public:
  static constexpr std::size_t kInitialCapacity = 16;

  DoublingArray() : data_(std::make_unique<T[]>(kInitialCapacity)), capacity_(kInitialCapacity) {}

  void clear() override { size_ = 0; }
  void add(const T& element) override {
    if (size_ == capacity_) grow();
    data_[size_++] = element;
  }
  std::size_t size() const override { return size_; }
  const T& get(std::size_t i) const override {
    this->check_index(i);
    return data_[i];
  }
  ContainerKind kind() const override { return ContainerKind::DoublingArray; }

  std::size_t capacity() const { return capacity_; }
  std::span<const T> view() const { return {data_.get(), size_}; }

 private:
  void grow() {
    const std::size_t next = capacity_ * 2;
    auto bigger = std::make_unique<T[]>(next);
    std::move(data_.get(), data_.get() + size_, bigger.get());
    data_ = std::move(bigger);
    capacity_ = next;
  }

  std::unique_ptr<T[]> data_;
  std::size_t capacity_;
  std::size_t size_ = 0;
};

/// One separate heap allocation per element, held through a handle.
template <typename T>
class IndirectArray final : public Sequence<T> {
 public:
  void clear() override { handles_.clear(); }
  void add(const T& element) override { handles_.push_back(std::make_unique<T>(element)); }
  std::size_t size() const override { return handles_.size(); }
  const T& get(std::size_t i) const override {
    this->check_index(i);
    return *handles_[i];
  }
  ContainerKind kind() const override { return ContainerKind::IndirectArray; }

 private:
  std::vector<std::unique_ptr<T>> handles_;
};

/// Slab of fixed-size slots allocated in chunks. clear() only resets the
/// logical size, so slots are reused from one event to the next.
template <typename T>
class SlotArray final : public Sequence<T> {
 public:
  static constexpr std::size_t kChunkSlots = 256;

  void clear() override { size_ = 0; }
  void add(const T& element) override { next_slot() = element; }
  std::size_t size() const override { return size_; }
  const T& get(std::size_t i) const override {
    this->check_index(i);
    return slot(i);
  }
  ContainerKind kind() const override { return ContainerKind::SlotArray; }

  /// Claims the next slot (allocating a chunk only when none is free) and
  /// returns it for in-place filling. The slot keeps stale contents.
  T& next_slot() {
    if (size_ == capacity()) {
      chunks_.push_back(std::make_unique<T[]>(kChunkSlots));
      ++allocations_;
    }
    return slot_mut(size_++);
  }

  T& slot_mut(std::size_t i) { return chunks_[i / kChunkSlots][i % kChunkSlots]; }
  const T& slot(std::size_t i) const { return chunks_[i / kChunkSlots][i % kChunkSlots]; }

  std::size_t capacity() const { return chunks_.size() * kChunkSlots; }
  std::size_t allocations() const { return allocations_; }

  /// Calls f(std::span<const T>) for each contiguous run of live slots.
  template <typename F>
  void for_each_run(F&& f) const {
    std::size_t remaining = size_;
    for (const auto& chunk : chunks_) {
      if (remaining == 0) break;
      const std::size_t n = std::min(remaining, kChunkSlots);
      f(std::span<const T>(chunk.get(), n));
      remaining -= n;
    }
  }

 private:
  std::vector<std::unique_ptr<T[]>> chunks_;
  std::size_t size_ = 0;
  std::size_t allocations_ = 0;
};

template <typename T>
std::unique_ptr<Sequence<T>> make_sequence(ContainerKind kind) {
  switch (kind) {
    case ContainerKind::ValueSeq:
      return std::make_unique<ValueSeq<T>>();
    case ContainerKind::DoublingArray:
      return std::make_unique<DoublingArray<T>>();
    case ContainerKind::IndirectArray:
      return std::make_unique<IndirectArray<T>>();
    case ContainerKind::SlotArray:
      return std::make_unique<SlotArray<T>>();
  }
  throw std::invalid_argument("unknown container kind");
}

/// Contiguous view for the by-value kinds; empty optional otherwise.
template <typename T>
std::optional<std::span<const T>> contiguous_view(const Sequence<T>& seq) {
  switch (seq.kind()) {
    case ContainerKind::ValueSeq:
      return static_cast<const ValueSeq<T>&>(seq).view();
    case ContainerKind::DoublingArray:
      return static_cast<const DoublingArray<T>&>(seq).view();
    default:
      return std::nullopt;
  }
}

/// Visits every element in order, using the cheapest traversal the
/// container offers: spans for contiguous and slab kinds, get() otherwise.
template <typename T, typename F>
void for_each_element(const Sequence<T>& seq, F&& f) {
  if (auto v = contiguous_view(seq)) {
    for (const T& e : *v) f(e);
  } else if (seq.kind() == ContainerKind::SlotArray) {
    static_cast<const SlotArray<T>&>(seq).for_each_run([&](std::span<const T> run) {
      for (const T& e : run) f(e);
    });
  } else {
    const std::size_t n = seq.size();
    for (std::size_t i = 0; i < n; ++i) f(seq.get(i));
  }
}

/// Attribute `attr` of every element, widened to double (exact for every
/// attribute type used here). Throws std::out_of_range on a bad index.
template <Persistent T>
std::vector<double> extract_column(const Sequence<T>& seq, std::size_t attr) {
  if (attr >= attribute_count<T>()) {
    throw std::out_of_range("attribute index " + std::to_string(attr) + " out of range for " +
                            std::string(ClassTraits<T>::name));
  }
  std::vector<double> column;
  column.reserve(seq.size());
  for_each_field<T>([&](const auto& f, std::size_t i) {
    if (i != attr) return;
    for_each_element(seq, [&](const T& e) { column.push_back(static_cast<double>(e.*(f.ptr))); });
  });
  return column;
}

/// Rebuilds elements from a full set of columns (one per attribute).
template <Persistent T>
std::vector<T> assemble_from_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.size() != attribute_count<T>()) {
    throw std::invalid_argument("column count does not match attribute count");
  }
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  std::vector<T> out(n);
  for_each_field<T>([&](const auto& f, std::size_t a) {
    using M = typename std::remove_cvref_t<decltype(f)>::member_type;
    if (columns[a].size() != n) throw std::invalid_argument("ragged columns");
    for (std::size_t i = 0; i < n; ++i) out[i].*(f.ptr) = static_cast<M>(columns[a][i]);
  });
  return out;
}

template <typename T>
bool same_elements(const Sequence<T>& a, const Sequence<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a.get(i) == b.get(i))) return false;
  }
  return true;
}

}  // namespace crossbench
