#include <gtest/gtest.h>

#include <map>

#include "coopcache/combinatorics.hpp"
#include "coopcache/error.hpp"
#include "coopcache/placement.hpp"

using namespace coopcache;

namespace {

SystemParams P(int n, int k, Rational m, int amax) { return SystemParams{n, k, m, amax, std::nullopt}; }

}  // namespace

TEST(Layout, ExampleCounts) {
  DerivedParams d = derive(P(6, 6, 4, 2), 2, Loads{2, 1});
  SubfileLayout layout(d);
  EXPECT_EQ(layout.per_file(), 45);
  EXPECT_EQ(layout.total(), 270);
  EXPECT_EQ(layout.of_file(3).size(), 45u);
  EXPECT_EQ(layout.offset_in_file({1, 1, UserSet::of({1, 2, 3, 4})}), 0);
  EXPECT_EQ(layout.offset_in_file({1, 3, UserSet::of({3, 4, 5, 6})}), 44);
}

TEST(Layout, OffsetsEnumerateTheFile) {
  DerivedParams d = derive(P(8, 5, Rational(16, 5), 2), 1, Loads{1, 1});
  SubfileLayout layout(d);
  auto ids = layout.of_file(2);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    EXPECT_TRUE(layout.contains(ids[i]));
    EXPECT_EQ(layout.offset_in_file(ids[i]), static_cast<std::int64_t>(i));
  }
  EXPECT_FALSE(layout.contains({2, 3, UserSet::of({1, 2})}));
  EXPECT_FALSE(layout.contains({2, 1, UserSet::of({1})}));
  EXPECT_FALSE(layout.contains({9, 1, UserSet::of({1, 2})}));
}

TEST(Placement, FileSizeMustDivide) {
  DerivedParams d = derive(P(6, 6, 4, 2), 2, Loads{2, 1});
  EXPECT_EQ(default_file_bits(d, 1), 360u);
  EXPECT_EQ(default_file_bits(d, 360), 360u);
  EXPECT_EQ(default_file_bits(d, 361), 720u);
  FileLibrary bad(6, 368, 1);
  try {
    split_files(bad, d);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), ValidationError::Code::FileSizeNotDivisible);
    EXPECT_NE(std::string(e.what()).find("360"), std::string::npos);
  }
  EXPECT_THROW(FileLibrary(6, 7, 1), ValidationError);
}

TEST(Placement, CacheHoldsExactlyMF) {
  for (int k = 2; k <= 6; ++k) {
    for (int t = 0; t <= k; ++t) {
      const int n = k + 1;
      SystemParams p = P(n, k, Rational(t * n, k), 1);
      DerivedParams d = derive(p, 1, Loads{0, 2});
      FileLibrary lib(n, default_file_bits(d, 1000), 7);
      SplitFiles split = split_files(lib, d);
      auto caches = fill_caches(split, d);
      ASSERT_EQ(caches.size(), static_cast<std::size_t>(k));
      std::map<SubfileId, int> holders;
      for (const CacheState& c : caches) {
        // M*F bits: t/K of every file.
        EXPECT_EQ(Rational(static_cast<std::int64_t>(c.cached_bits(split.subfile_bytes))),
                  p.cache * Rational(static_cast<std::int64_t>(lib.file_bits())));
        for (const SubfileId& id : c.entries) {
          EXPECT_TRUE(id.subset.contains(c.user));
          ++holders[id];
        }
      }
      for (const auto& [id, count] : holders) EXPECT_EQ(count, t);
      if (t > 0) EXPECT_EQ(holders.size(), split.ids.size());
    }
  }
}

TEST(Placement, EmptyAndFullCaches) {
  DerivedParams empty = derive(P(6, 6, 0, 2), 2);
  FileLibrary lib(6, default_file_bits(empty, 64), 3);
  auto caches = fill_caches(split_files(lib, empty), empty);
  for (const auto& c : caches) EXPECT_TRUE(c.entries.empty());

  DerivedParams full = derive(P(6, 6, 6, 2), 1);
  FileLibrary lib_full(6, default_file_bits(full, 64), 3);
  SplitFiles split = split_files(lib_full, full);
  for (const auto& c : fill_caches(split, full)) EXPECT_EQ(c.entries.size(), split.ids.size());
}

TEST(Placement, SubfilesTileTheFile) {
  DerivedParams d = derive(P(6, 6, 4, 2), 2, Loads{2, 1});
  FileLibrary lib(6, 720, 11);
  SplitFiles split = split_files(lib, d);
  EXPECT_EQ(split.subfile_bytes, 2u);
  std::vector<std::uint8_t> joined;
  for (const SubfileId& id : split.layout.of_file(4)) {
    auto part = split.payload(lib, id);
    joined.insert(joined.end(), part.begin(), part.end());
  }
  auto file = lib.file(4);
  EXPECT_TRUE(std::equal(joined.begin(), joined.end(), file.begin(), file.end()));
}

TEST(Library, DeterministicPerSeed) {
  FileLibrary a(3, 256, 42), b(3, 256, 42), c(3, 256, 43);
  for (int n = 1; n <= 3; ++n) {
    EXPECT_TRUE(std::ranges::equal(a.file(n), b.file(n)));
  }
  EXPECT_FALSE(std::ranges::equal(a.file(1), c.file(1)));
}
