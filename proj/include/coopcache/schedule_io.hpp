#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "coopcache/delivery.hpp"

namespace coopcache {

// Line-oriented schedule format:
//
//   coopcache-schedule 1
//   users 6 files 6 replication 4 alpha 2 loads 2 1
//   demands 1 2 3 4 5 6
//   slot 1
//   groups {1,2,3} {4,5,6}
//   server (1,3,{2,3,4,5}) ... | 1:(1,3,{2,3,4,5}) ...
//   user 2 (1,1,{2,3,4,5}) (3,1,{1,2,4,5}) | 1:(1,1,{2,3,4,5}) 3:(3,1,{1,2,4,5})
//   end
//
// Components and recipients are written sorted; import followed by export
// reproduces the input byte for byte.
std::string export_schedule(const Schedule& schedule);
void write_schedule(std::ostream& out, const Schedule& schedule);

// Throws FormatError with the offending line number.
Schedule import_schedule(std::string_view text);
Schedule read_schedule_file(const std::filesystem::path& path);

}  // namespace coopcache
