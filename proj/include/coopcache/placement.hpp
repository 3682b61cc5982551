#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coopcache/combinatorics.hpp"
#include "coopcache/params.hpp"

namespace coopcache {

// Subfile W^l_{n,T}: layer `layer` of file `file`, cached by the users in
// `subset`. File and layer indices are 1-based.
struct SubfileId {
  int file = 0;
  int layer = 0;
  UserSet subset;

  // "(n,l,{a,b,c})"
  std::string to_string() const;

  friend bool operator==(const SubfileId&, const SubfileId&) = default;
  friend auto operator<=>(const SubfileId&, const SubfileId&) = default;
};

// N files of equal length with deterministic pseudo-random content.
class FileLibrary {
 public:
  FileLibrary(int files, std::uint64_t file_bits, std::uint64_t seed);

  int files() const { return static_cast<int>(payloads_.size()); }
  std::uint64_t file_bits() const { return file_bits_; }
  std::size_t file_bytes() const { return static_cast<std::size_t>(file_bits_ / 8); }
  std::span<const std::uint8_t> file(int n) const { return payloads_.at(n - 1); }

 private:
  std::uint64_t file_bits_;
  std::vector<std::vector<std::uint8_t>> payloads_;
};

// Splitting rule: each file is cut into L*C(K,t) equal subfiles, ordered by
// layer then by subset in canonical order.
class SubfileLayout {
 public:
  explicit SubfileLayout(const DerivedParams& derived);

  int users() const { return users_; }
  int files() const { return files_; }
  int replication() const { return t_; }
  std::int64_t layers() const { return layers_; }
  const std::vector<UserSet>& subsets() const { return subsets_; }

  std::int64_t per_file() const { return layers_ * static_cast<std::int64_t>(subsets_.size()); }
  std::int64_t total() const { return per_file() * files_; }

  bool contains(const SubfileId& id) const;
  // Position of the subfile inside its file, in [0, per_file()).
  std::int64_t offset_in_file(const SubfileId& id) const;

  // Subfiles of file n in canonical order; concatenating their payloads
  // yields the file.
  std::vector<SubfileId> of_file(int n) const;

 private:
  int users_;
  int files_;
  int t_;
  std::int64_t layers_;
  std::vector<UserSet> subsets_;
};

struct SplitFiles {
  SubfileLayout layout;
  std::size_t subfile_bytes = 0;
  std::vector<SubfileId> ids;  // N * L * C(K,t), canonical order

  std::span<const std::uint8_t> payload(const FileLibrary& library, const SubfileId& id) const;
};

// Least multiple of 8*L*C(K,t) that is >= target_bits (and > 0).
std::uint64_t default_file_bits(const DerivedParams& derived, std::uint64_t target_bits);

// Throws ValidationError(FileSizeNotDivisible) naming the required multiple
// when F is not a multiple of 8*L*C(K,t).
SplitFiles split_files(const FileLibrary& library, const DerivedParams& derived);

// Cache Z_k: every subfile whose subset contains k.
struct CacheState {
  int user = 0;
  std::vector<SubfileId> entries;  // sorted

  bool contains(const SubfileId& id) const;
  std::uint64_t cached_bits(std::size_t subfile_bytes) const { return entries.size() * subfile_bytes * 8; }
};

std::vector<CacheState> fill_caches(const SplitFiles& split, const DerivedParams& derived);

}  // namespace coopcache
