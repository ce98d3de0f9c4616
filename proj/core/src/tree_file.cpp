#include "crossbench/tree_file.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace crossbench {

namespace {

constexpr std::string_view kMagic = "RTBT";
constexpr std::size_t kTrailerBytes = 8 + 4;
constexpr std::size_t kMaxHeaderBytes = 1 << 16;

void write_header(Bytes& out, const TreeHeader& h, std::uint64_t& entry_count_offset) {
  ByteWriter w(out);
  w.put_bytes(as_bytes(kMagic));
  w.put(kTreeFormatVersion);
  w.put(static_cast<std::uint8_t>(h.layout));
  w.put(h.split_level);
  w.put(static_cast<std::uint8_t>(h.widen ? 1 : 0));
  w.put(h.compression_level);
  w.put(h.basket_size);
  entry_count_offset = w.size();
  w.put(h.entry_count);
  w.put(static_cast<std::uint16_t>(h.classes.size()));
  for (const auto& c : h.classes) {
    w.put_string(c.class_name);
    w.put(static_cast<std::uint16_t>(c.attributes.size()));
    for (const auto& a : c.attributes) {
      w.put_string(a.name);
      w.put(a.width);
      w.put(static_cast<std::uint8_t>(a.kind));
    }
  }
}

TreeHeader read_header(ByteReader& r) {
  r.expect_magic(kMagic);
  if (r.get<std::uint16_t>() != kTreeFormatVersion) throw FormatError("unsupported tree format version");
  TreeHeader h;
  const auto layout = r.get<std::uint8_t>();
  if (layout > 1) throw FormatError("unknown tree layout " + std::to_string(layout));
  h.layout = static_cast<TreeLayout>(layout);
  h.split_level = r.get<std::uint8_t>();
  h.widen = r.get<std::uint8_t>() != 0;
  h.compression_level = r.get<std::uint8_t>();
  if (h.compression_level > 9) throw FormatError("compression level out of range");
  h.basket_size = r.get<std::uint32_t>();
  h.entry_count = r.get<std::uint64_t>();
  const auto classes = r.get<std::uint16_t>();
  for (std::uint16_t c = 0; c < classes; ++c) {
    ClassSchema s;
    s.class_name = r.get_string();
    const auto attrs = r.get<std::uint16_t>();
    for (std::uint16_t a = 0; a < attrs; ++a) {
      AttributeSpec spec;
      spec.name = r.get_string();
      spec.width = r.get<std::uint8_t>();
      const auto kind = r.get<std::uint8_t>();
      if (kind > 1) throw FormatError("unknown attribute kind");
      spec.kind = static_cast<AttributeKind>(kind);
      s.attributes.push_back(std::move(spec));
    }
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    h.classes.push_back(std::move(s));
  }
  if (h.widen != (h.layout == TreeLayout::Matrix)) throw FormatError("widen flag inconsistent with layout");
  return h;
}

std::size_t unit_bytes(const BranchDescriptor& b, const std::vector<ClassSchema>& classes) {
  const auto& schema = classes.at(b.class_index);
  switch (b.encoding) {
    case BranchEncoding::RowNative:
      return schema_raw_size(schema);
    case BranchEncoding::RowWide:
      return schema_all_double_size(schema);
    case BranchEncoding::Column:
      return schema.attributes.at(b.attribute_index).width;
  }
  throw FormatError("unknown branch encoding");
}

bool same_descriptor(const BranchDescriptor& a, const BranchDescriptor& b) {
  return a.name == b.name && a.class_index == b.class_index && a.attribute_index == b.attribute_index &&
         a.encoding == b.encoding;
}

}  // namespace

std::vector<BranchDescriptor> make_branches(TreeLayout layout, int split_level,
                                            const std::vector<ClassSchema>& classes) {
  std::vector<BranchDescriptor> out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto ci = static_cast<std::uint16_t>(c);
    if (layout == TreeLayout::Matrix) {
      out.push_back({classes[c].class_name, ci, kWholeObject, BranchEncoding::RowWide});
    } else if (split_level <= 0) {
      out.push_back({classes[c].class_name, ci, kWholeObject, BranchEncoding::RowNative});
    } else {
      for (std::size_t a = 0; a < classes[c].attributes.size(); ++a) {
        out.push_back({classes[c].class_name + "." + classes[c].attributes[a].name, ci,
                       static_cast<std::uint16_t>(a), BranchEncoding::Column});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

TreeFileWriter::TreeFileWriter(const std::filesystem::path& path, TreeHeader header)
    : file_(path), header_(std::move(header)) {
  if (header_.compression_level > 9) throw std::invalid_argument("compression level must be within 0-9");
  if (header_.basket_size == 0) throw std::invalid_argument("basket size must be positive");
  for (const auto& c : header_.classes) c.validate();
  header_.entry_count = 0;
  branches_ = make_branches(header_.layout, header_.split_level, header_.classes);
  state_.resize(branches_.size());
  Bytes head;
  write_header(head, header_, entry_count_offset_);
  file_.append(head);
}

TreeFileWriter::~TreeFileWriter() = default;

void TreeFileWriter::append(std::size_t branch, ByteSpan entry_bytes, std::uint32_t element_count) {
  if (stats_) throw std::logic_error("tree file already finalized");
  auto& b = state_.at(branch);
  if (b.counts.size() != record_ids_.size()) {
    throw std::logic_error("branch '" + branches_[branch].name + "' filled twice for one entry");
  }
  if (b.pending_entries > 0 && b.pending.size() + entry_bytes.size() > header_.basket_size) flush(b);
  if (b.pending_entries == 0) b.pending_first = record_ids_.size();
  b.pending.insert(b.pending.end(), entry_bytes.begin(), entry_bytes.end());
  ++b.pending_entries;
  b.counts.push_back(element_count);
  payload_bytes_ += entry_bytes.size();
  if (b.pending.size() >= header_.basket_size) flush(b);
}

void TreeFileWriter::end_entry(std::uint64_t record_id) {
  for (std::size_t i = 0; i < state_.size(); ++i) {
    if (state_[i].counts.size() != record_ids_.size() + 1) {
      throw std::logic_error("branch '" + branches_[i].name + "' not filled for this entry");
    }
  }
  record_ids_.push_back(record_id);
}

void TreeFileWriter::flush(BranchState& b) {
  if (b.pending_entries == 0) return;
  if (b.pending.size() > std::numeric_limits<std::uint32_t>::max()) throw std::length_error("basket exceeds 4 GiB");
  const ByteBlock block = compress(ByteSpan(b.pending), header_.compression_level);
  BasketInfo info;
  info.first_entry = b.pending_first;
  info.entry_count = b.pending_entries;
  info.offset = file_.position();
  info.compressed_length = static_cast<std::uint32_t>(block.bytes.size());
  info.uncompressed_length = static_cast<std::uint32_t>(b.pending.size());
  file_.append(block.bytes);
  b.baskets.push_back(info);
  b.pending.clear();
  b.pending_entries = 0;
}

FileStats TreeFileWriter::finalize() {
  if (stats_) return *stats_;
  for (std::size_t i = 0; i < state_.size(); ++i) {
    if (state_[i].counts.size() != record_ids_.size()) {
      throw std::logic_error("branch '" + branches_[i].name + "' has an unterminated entry");
    }
    flush(state_[i]);
  }
  const std::uint64_t index_offset = file_.position();
  const std::uint64_t entries = record_ids_.size();

  Bytes index;
  ByteWriter w(index);
  w.put(entries);
  for (auto id : record_ids_) w.put(id);
  w.put(static_cast<std::uint32_t>(branches_.size()));
  FileStats s;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const auto& d = branches_[i];
    const auto& b = state_[i];
    w.put_string(d.name);
    w.put(d.class_index);
    w.put(d.attribute_index);
    w.put(static_cast<std::uint8_t>(d.encoding));
    w.put(static_cast<std::uint32_t>(b.baskets.size()));
    for (const auto& k : b.baskets) {
      w.put(k.first_entry);
      w.put(k.entry_count);
      w.put(k.offset);
      w.put(k.compressed_length);
      w.put(k.uncompressed_length);
    }
    for (auto c : b.counts) w.put(c);
    s.basket_count += b.baskets.size();
    s.baskets_per_branch.push_back(b.baskets.size());
  }
  w.put(index_offset);
  w.put_bytes(as_bytes(kMagic));
  file_.append(index);

  Bytes count_bytes;
  append_le(count_bytes, entries);
  file_.patch(entry_count_offset_, count_bytes);
  file_.close();

  header_.entry_count = entries;
  s.total_bytes = file_.position();
  s.entries = entries;
  s.payload_bytes = payload_bytes_;
  stats_ = s;
  return s;
}

// ---------------------------------------------------------------------------

TreeFileReader::TreeFileReader(const std::filesystem::path& path) : file_(path) {
  ++stats_.file_opens;
  ++stats_.metadata_loads;
  const std::string where = path.string() + ": ";
  try {
    if (file_.size() < 4 + kTrailerBytes) throw FormatError("too short for a tree file");
    const Bytes trailer = file_.read_at(file_.size() - kTrailerBytes, kTrailerBytes, stats_);
    ByteReader tr(trailer);
    const auto index_offset = tr.get<std::uint64_t>();
    tr.expect_magic(kMagic);
    if (index_offset > file_.size() - kTrailerBytes) throw FormatError("index offset out of range");

    const Bytes head = file_.read_at(0, std::min<std::uint64_t>(index_offset, kMaxHeaderBytes), stats_);
    ByteReader hr(head);
    header_ = read_header(hr);
    const std::uint64_t data_start = hr.position();
    branches_ = make_branches(header_.layout, header_.split_level, header_.classes);

    const Bytes index = file_.read_at(index_offset, file_.size() - kTrailerBytes - index_offset, stats_);
    ByteReader ir(index);
    const auto entries = ir.get<std::uint64_t>();
    if (entries != header_.entry_count) throw FormatError("entry count in index does not match header");
    if (entries > ir.remaining() / 8) throw FormatError("entry count exceeds index size");
    record_ids_.resize(entries);
    for (auto& id : record_ids_) id = ir.get<std::uint64_t>();

    const auto branch_count = ir.get<std::uint32_t>();
    if (branch_count != branches_.size()) throw FormatError("branch count does not match header schema");
    index_.resize(branch_count);
    for (std::uint32_t bi = 0; bi < branch_count; ++bi) {
      BranchDescriptor d;
      d.name = ir.get_string();
      d.class_index = ir.get<std::uint16_t>();
      d.attribute_index = ir.get<std::uint16_t>();
      d.encoding = static_cast<BranchEncoding>(ir.get<std::uint8_t>());
      if (!same_descriptor(d, branches_[bi])) throw FormatError("branch '" + d.name + "' does not match header");

      auto& idx = index_[bi];
      idx.unit = unit_bytes(d, header_.classes);
      const auto baskets = ir.get<std::uint32_t>();
      if (baskets > ir.remaining() / 28) throw FormatError("basket count exceeds index size");
      idx.baskets.resize(baskets);
      for (auto& k : idx.baskets) {
        k.first_entry = ir.get<std::uint64_t>();
        k.entry_count = ir.get<std::uint32_t>();
        k.offset = ir.get<std::uint64_t>();
        k.compressed_length = ir.get<std::uint32_t>();
        k.uncompressed_length = ir.get<std::uint32_t>();
      }
      idx.counts.resize(entries);
      for (auto& c : idx.counts) c = ir.get<std::uint32_t>();

      // Baskets must tile [0, entries) in order, sit inside the data region
      // and declare exactly the bytes of their entries.
      idx.entry_basket.resize(entries);
      idx.entry_offset.resize(entries);
      std::uint64_t next = 0;
      for (std::uint32_t k = 0; k < baskets; ++k) {
        const auto& info = idx.baskets[k];
        if (info.first_entry != next || info.entry_count == 0 || info.entry_count > entries - next) {
          throw FormatError("baskets of branch '" + d.name + "' do not cover entries contiguously");
        }
        if (info.offset < data_start || info.offset + info.compressed_length > index_offset) {
          throw FormatError("basket of branch '" + d.name + "' lies outside the data region");
        }
        if (header_.compression_level == 0 && info.compressed_length != info.uncompressed_length) {
          throw FormatError("stored basket of branch '" + d.name + "' has mismatched lengths");
        }
        std::uint64_t offset = 0;
        for (std::uint64_t e = info.first_entry; e < info.first_entry + info.entry_count; ++e) {
          idx.entry_basket[e] = k;
          idx.entry_offset[e] = offset;
          offset += static_cast<std::uint64_t>(idx.counts[e]) * idx.unit;
        }
        if (offset != info.uncompressed_length) {
          throw FormatError("basket of branch '" + d.name + "' declares " +
                            std::to_string(info.uncompressed_length) + " bytes, entries need " +
                            std::to_string(offset));
        }
        next += info.entry_count;
      }
      if (next != entries) throw FormatError("baskets of branch '" + d.name + "' do not cover all entries");
    }
    if (ir.remaining() != 0) throw FormatError("trailing bytes in index");
  } catch (const FormatError& e) {
    throw FormatError(where + e.what());
  }
  cache_.resize(branches_.size());
}

void TreeFileReader::check_entry(std::uint64_t entry) const {
  if (entry >= header_.entry_count) {
    throw std::out_of_range("entry " + std::to_string(entry) + " out of range (" +
                            std::to_string(header_.entry_count) + " entries)");
  }
}

std::uint32_t TreeFileReader::element_count(std::size_t branch, std::uint64_t entry) const {
  check_entry(entry);
  return index_.at(branch).counts[entry];
}

ByteSpan TreeFileReader::entry_bytes(std::size_t branch, std::uint64_t entry) {
  check_entry(entry);
  const auto& idx = index_.at(branch);
  auto& cache = cache_[branch];
  const std::uint32_t k = idx.entry_basket[entry];
  if (cache.basket != static_cast<std::int64_t>(k)) {
    const auto& info = idx.baskets[k];
    cache.basket = -1;
    const Bytes stored = file_.read_at(info.offset, info.compressed_length, stats_);
    try {
      cache.bytes = decompress_bytes(stored, info.uncompressed_length, header_.compression_level);
    } catch (const FormatError& e) {
      throw FormatError(path().string() + ": branch '" + branches_[branch].name + "' basket " + std::to_string(k) +
                        ": " + e.what());
    }
    cache.basket = k;
  }
  return ByteSpan(cache.bytes).subspan(idx.entry_offset[entry], idx.counts[entry] * idx.unit);
}

void TreeFileReader::drop_caches() {
  for (auto& c : cache_) {
    c.basket = -1;
    c.bytes.clear();
  }
}

}  // namespace crossbench
