#include "coopcache/placement.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "coopcache/error.hpp"

namespace coopcache {

std::string SubfileId::to_string() const {
  return "(" + std::to_string(file) + "," + std::to_string(layer) + "," + subset.to_string() + ")";
}

FileLibrary::FileLibrary(int files, std::uint64_t file_bits, std::uint64_t seed) : file_bits_(file_bits) {
  if (file_bits % 8 != 0) {
    throw ValidationError(ValidationError::Code::FileSizeNotDivisible, "file size must be a whole number of bytes");
  }
  std::mt19937_64 rng(seed);
  payloads_.resize(files);
  for (auto& payload : payloads_) {
    payload.resize(file_bits / 8);
    for (auto& byte : payload) byte = static_cast<std::uint8_t>(rng() & 0xff);
  }
}

SubfileLayout::SubfileLayout(const DerivedParams& derived)
    : users_(derived.users),
      files_(derived.files),
      t_(derived.replication),
      layers_(derived.layers()),
      subsets_(subsets_of_size(derived.users, derived.replication)) {
  if (derived.users > 31) {
    throw ValidationError(ValidationError::Code::TooManyUsers, "placement supports at most 31 users");
  }
}

bool SubfileLayout::contains(const SubfileId& id) const {
  return id.file >= 1 && id.file <= files_ && id.layer >= 1 && id.layer <= layers_ && id.subset.size() == t_ &&
         id.subset.is_subset_of(UserSet::range(users_));
}

std::int64_t SubfileLayout::offset_in_file(const SubfileId& id) const {
  auto it = std::lower_bound(subsets_.begin(), subsets_.end(), id.subset);
  return (id.layer - 1) * static_cast<std::int64_t>(subsets_.size()) + (it - subsets_.begin());
}

std::vector<SubfileId> SubfileLayout::of_file(int n) const {
  std::vector<SubfileId> out;
  out.reserve(per_file());
  for (int l = 1; l <= layers_; ++l) {
    for (UserSet T : subsets_) out.push_back({n, l, T});
  }
  return out;
}

std::span<const std::uint8_t> SplitFiles::payload(const FileLibrary& library, const SubfileId& id) const {
  const std::size_t offset = static_cast<std::size_t>(layout.offset_in_file(id)) * subfile_bytes;
  return library.file(id.file).subspan(offset, subfile_bytes);
}

std::uint64_t default_file_bits(const DerivedParams& derived, std::uint64_t target_bits) {
  const std::uint64_t unit = 8ull * static_cast<std::uint64_t>(derived.layers()) *
                             static_cast<std::uint64_t>(binomial(derived.users, derived.replication));
  const std::uint64_t units = std::max<std::uint64_t>(1, (target_bits + unit - 1) / unit);
  return units * unit;
}

SplitFiles split_files(const FileLibrary& library, const DerivedParams& derived) {
  SubfileLayout layout(derived);
  const std::uint64_t unit = 8ull * static_cast<std::uint64_t>(layout.per_file());
  if (library.file_bits() % unit != 0) {
    throw ValidationError(ValidationError::Code::FileSizeNotDivisible,
                          "file size F=" + std::to_string(library.file_bits()) + " bits is not a multiple of 8*L*C(K,t)=" +
                              std::to_string(unit));
  }
  if (library.files() != derived.files) {
    throw ValidationError(ValidationError::Code::LoadsInvalid, "library holds " + std::to_string(library.files()) +
                                                                   " files, expected " + std::to_string(derived.files));
  }
  SplitFiles split{layout, static_cast<std::size_t>(library.file_bits() / unit), {}};
  split.ids.reserve(layout.total());
  for (int n = 1; n <= derived.files; ++n) {
    auto ids = layout.of_file(n);
    split.ids.insert(split.ids.end(), ids.begin(), ids.end());
  }
  return split;
}

bool CacheState::contains(const SubfileId& id) const {
  return std::binary_search(entries.begin(), entries.end(), id);
}

std::vector<CacheState> fill_caches(const SplitFiles& split, const DerivedParams& derived) {
  std::vector<CacheState> caches(derived.users);
  for (int k = 1; k <= derived.users; ++k) caches[k - 1].user = k;
  for (const SubfileId& id : split.ids) {
    for (int k : id.subset.members()) caches[k - 1].entries.push_back(id);
  }
  for (auto& cache : caches) std::sort(cache.entries.begin(), cache.entries.end());
  return caches;
}

}  // namespace coopcache
