#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coopcache/error.hpp"
#include "coopcache/schedule_io.hpp"
#include "reference_schedule.hpp"

using namespace coopcache;
namespace fx = coopcache::fixtures;

namespace {

int error_line(const std::string& text) {
  try {
    import_schedule(text);
  } catch (const FormatError& e) {
    return e.line();
  }
  return -1;
}

const char* kSmall =
    "coopcache-schedule 1\n"
    "users 2 files 2 replication 1 alpha 1 loads 0 1\n"
    "demands 1 2\n"
    "slot 1\n"
    "groups\n"
    "server (1,1,{2}) (2,1,{1}) | 1:(1,1,{2}) 2:(2,1,{1})\n"
    "end\n";

}  // namespace

TEST(ScheduleIo, RoundTripIsByteExact) {
  Schedule s = fx::reference_schedule();
  std::string text = export_schedule(s);
  Schedule back = import_schedule(text);
  EXPECT_EQ(back, s);
  EXPECT_EQ(export_schedule(back), text);
  EXPECT_EQ(export_schedule(import_schedule(kSmall)), kSmall);
}

TEST(ScheduleIo, FirstLines) {
  std::istringstream in(export_schedule(fx::reference_schedule()));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "coopcache-schedule 1");
  std::getline(in, line);
  EXPECT_EQ(line, "users 6 files 6 replication 4 alpha 2 loads 2 1");
  std::getline(in, line);
  EXPECT_EQ(line, "demands 1 2 3 4 5 6");
  std::getline(in, line);
  EXPECT_EQ(line, "slot 1");
  std::getline(in, line);
  EXPECT_EQ(line, "groups {1,2,3} {4,5,6}");
}

TEST(ScheduleIo, ErrorsCarryLineNumbers) {
  std::string s = kSmall;
  EXPECT_EQ(error_line("coopcache-schedule 2\n"), 1);
  EXPECT_EQ(error_line(""), 1);
  EXPECT_EQ(error_line(std::string(s).replace(s.find("alpha 1"), 7, "alpha x")), 2);
  EXPECT_EQ(error_line(std::string(s).replace(s.find("demands 1 2"), 11, "demands 1")), 3);
  EXPECT_EQ(error_line(std::string(s).replace(s.find("slot 1"), 6, "slot 2")), 4);
  EXPECT_EQ(error_line(std::string(s).replace(s.find("{2}) ("), 5, "{2} (")), 6);
  EXPECT_EQ(error_line(std::string(s).replace(s.find(" | "), 3, " ")), 6);
  EXPECT_EQ(error_line(std::string(s).replace(s.find("end\n"), 4, "")), 7);
  EXPECT_EQ(error_line(s + "junk\n"), 8);
  EXPECT_EQ(error_line(std::string(s).replace(s.find("{1}) |"), 3, "{1,}")), 6);
}

TEST(ScheduleIo, FileReadMatchesString) {
  auto path = std::filesystem::temp_directory_path() / "coopcache_io_test.schedule";
  {
    std::ofstream out(path, std::ios::binary);
    write_schedule(out, fx::reference_schedule());
  }
  EXPECT_EQ(read_schedule_file(path), fx::reference_schedule());
  std::filesystem::remove(path);
  EXPECT_THROW(read_schedule_file(path), FormatError);
}

TEST(ScheduleIo, CheckedInFixtureMatchesTranscription) {
  Schedule s = read_schedule_file(std::filesystem::path(COOPCACHE_FIXTURE_DIR) / "reference.schedule");
  EXPECT_EQ(s, fx::reference_schedule());
}
