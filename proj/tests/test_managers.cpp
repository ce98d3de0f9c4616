#include <gtest/gtest.h>

#include "crossbench/generator.hpp"
#include "crossbench/managers.hpp"
#include "crossbench/pipeline.hpp"
#include "test_support.hpp"

namespace crossbench {
namespace {

using testing::TempDir;

std::filesystem::path write_store(const std::filesystem::path& path, const StoreOptions& o,
                                  const std::vector<Event>& events) {
  auto w = make_writer<Event>(path, o);
  for (const auto& e : events) w->write(e);
  w->finalize();
  return path;
}

using Cell = std::tuple<ManagerKind, ContainerKind, int, int>;
class StoreRoundTrip : public ::testing::TestWithParam<Cell> {};

// Any manager, container, level and split level reproduces what was written.
TEST_P(StoreRoundTrip, ReadBackEqualsWritten) {
  const auto [manager, container, level, split] = GetParam();
  TempDir dir("store");
  std::vector<Event> events;
  for (std::uint64_t i = 0; i < 12; ++i) events.push_back(generate_event(77, i, 40, container));
  StoreOptions o;
  o.manager = manager;
  o.compression_level = level;
  o.split_level = split;
  o.basket_size = 3000;
  const auto path = write_store(dir / "s.bin", o, events);

  auto r = make_reader<Event>(o);
  Event folder(container);
  r->connect(folder, path);
  ASSERT_EQ(r->entry_count(), events.size());
  for (std::uint64_t i : {5u, 0u, 11u, 6u, 7u, 1u}) {
    r->read(i);
    ASSERT_TRUE(folder == events[i]) << "entry " << i;
  }
}

INSTANTIATE_TEST_SUITE_P(AllCells, StoreRoundTrip,
                         ::testing::Combine(::testing::ValuesIn(kAllManagerKinds),
                                            ::testing::ValuesIn(kAllContainerKinds), ::testing::Values(0, 1, 9),
                                            ::testing::Values(0, 99)),
                         [](const auto& info) {
                           return std::string(to_string(std::get<0>(info.param))) + "_" +
                                  std::string(short_name(std::get<1>(info.param))) + "_l" +
                                  std::to_string(std::get<2>(info.param)) + "_s" +
                                  std::to_string(std::get<3>(info.param));
                         });

class ConnectSemantics : public ::testing::TestWithParam<ManagerKind> {};

TEST_P(ConnectSemantics, SameFileIsFastPathNewFileLoadsMetadataOnce) {
  TempDir dir("connect");
  StoreOptions o;
  o.manager = GetParam();
  std::vector<Event> events;
  for (std::uint64_t i = 0; i < 4; ++i) events.push_back(generate_event(3, i, 100));
  const auto a = write_store(dir / "a.bin", o, events);
  const auto b = write_store(dir / "b.bin", o, events);

  auto r = make_reader<Event>(o);
  Event f1;
  Event f2;
  r->connect(f1, a);
  EXPECT_EQ(r->file_loads(), 1u);
  const auto loads = r->stats().metadata_loads;
  r->connect(f2, a);  // same file, other folder
  EXPECT_EQ(r->file_loads(), 1u);
  EXPECT_EQ(r->stats().metadata_loads, loads);
  r->read(2);
  EXPECT_TRUE(f2 == events[2]);
  EXPECT_TRUE(f1.element_count() == 0);

  r->connect(f1, b);
  EXPECT_EQ(r->file_loads(), 2u);
  EXPECT_EQ(r->stats().metadata_loads, loads + 1);
  EXPECT_EQ(r->stats().file_opens, 2u);
  r->read(1);
  EXPECT_TRUE(f1 == events[1]);
  EXPECT_EQ(r->current_file(), b);
}

TEST_P(ConnectSemantics, FailedOpenLeavesReaderDisconnected) {
  TempDir dir("connect");
  StoreOptions o;
  o.manager = GetParam();
  std::vector<Event> events;
  events.push_back(generate_event(3, 0, 100));
  const auto a = write_store(dir / "a.bin", o, events);
  auto r = make_reader<Event>(o);
  Event f;
  r->connect(f, a);
  EXPECT_THROW(r->connect(f, dir / "missing.bin"), IoError);
  EXPECT_FALSE(r->current_file().has_value());
  EXPECT_THROW(r->read(0), std::logic_error);
  r->connect(f, a);
  r->read(0);
  EXPECT_TRUE(f == generate_event(3, 0, 100));
}

TEST_P(ConnectSemantics, LoadsEqualSwitchesOfSelection) {
  TempDir dir("connect");
  StoreOptions o;
  o.manager = GetParam();
  std::vector<Event> events;
  for (std::uint64_t i = 0; i < 100; ++i) events.push_back(generate_event(5, i, 500));
  std::vector<std::filesystem::path> paths;
  paths.push_back(write_store(dir / "f0.bin", o, events));
  for (int f = 1; f < 10; ++f) {
    paths.push_back(dir / ("f" + std::to_string(f) + ".bin"));
    std::filesystem::copy_file(paths.front(), paths.back());
  }
  const FileChain chain = FileChain::uniform(10, 100, paths);
  const Selection sel = next_indices(chain, {3, 10, 1}, 0, kPileupPerCrossing);
  ASSERT_EQ(sel.entries.size(), kPileupPerCrossing);

  auto r = make_reader<Event>(o);
  FolderRegistry folders(ContainerKind::ValueSeq);
  for (std::size_t i = 0; i < sel.entries.size(); ++i) {
    const auto loc = chain.locate(sel.entries[i]);
    r->connect(folders.minbias(i), chain.members()[loc.file].path);
    r->read(loc.entry);
    ASSERT_TRUE(folders.minbias(i) == events[loc.entry]);
  }
  EXPECT_EQ(r->file_loads(), 1 + sel.file_switches);
  EXPECT_EQ(r->stats().metadata_loads, 1 + sel.file_switches);
}

INSTANTIATE_TEST_SUITE_P(Managers, ConnectSemantics, ::testing::ValuesIn(kAllManagerKinds),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Managers, ReadBeforeConnectIsLogicError) {
  auto r = make_reader<Event>(StoreOptions{});
  EXPECT_THROW(r->read(0), std::logic_error);
}

TEST(Managers, KeysReadNamed) {
  TempDir dir("keys");
  StoreOptions o;
  o.manager = ManagerKind::Keys;
  o.folder_name = "digis";
  const auto path = dir / "d.rtbk";
  {
    auto w = make_writer<Digis>(path, o);
    for (std::uint64_t i = 0; i < 3; ++i) {
      Digis d;
      d.id = i;
      d.calo_digis->add({static_cast<std::int32_t>(i), 1.0f});
      w->write(d);
    }
    w->finalize();
  }
  KeysReader<Digis> r(o);
  Digis folder;
  r.connect(folder, path);
  Digis named;
  r.read_named("digis2", named);
  EXPECT_EQ(named.id, 2u);
  EXPECT_THROW(r.read_named("digis3", named), std::out_of_range);
}

TEST(Managers, LayoutMismatchRejected) {
  TempDir dir("layout");
  StoreOptions tree;
  std::vector<Event> events;
  events.push_back(generate_event(1, 0, 100));
  const auto path = write_store(dir / "t.rtbt", tree, events);
  StoreOptions matrix;
  matrix.manager = ManagerKind::Matrix;
  auto r = make_reader<Event>(matrix);
  Event f;
  EXPECT_THROW(r->connect(f, path), FormatError);
  EXPECT_FALSE(r->current_file().has_value());
}

TEST(Managers, OptionsValidated) {
  StoreOptions o;
  o.compression_level = 10;
  EXPECT_THROW(validate(o), std::invalid_argument);
  o.compression_level = 1;
  o.basket_size = 0;
  EXPECT_THROW(validate(o), std::invalid_argument);
  o.basket_size = 10;
  o.split_level = -1;
  EXPECT_THROW(validate(o), std::invalid_argument);
  EXPECT_EQ(parse_manager_kind("keys"), ManagerKind::Keys);
  EXPECT_EQ(parse_manager_kind("matrix"), ManagerKind::Matrix);
  EXPECT_EQ(parse_manager_kind("tree"), ManagerKind::Tree);
  EXPECT_THROW(parse_manager_kind("blob"), std::invalid_argument);
}

}  // namespace
}  // namespace crossbench
