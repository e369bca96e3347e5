#include <fstream>

#include <gtest/gtest.h>

#include "scpa/error.hpp"
#include "scpa/task_table.hpp"
#include "test_support.hpp"

namespace scpa {
namespace {

Errc table_error(std::string_view text) {
  try {
    TaskTable::parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return Errc::io_failure;
}

TEST(TaskTable, DefaultArray) {
  const auto t = TaskTable::default_array();
  ASSERT_EQ(t.pe_count(), 4);
  EXPECT_EQ(t.worker_count(), 3);
  EXPECT_EQ(t.entries()[0].pe, kMasterPe);
  EXPECT_EQ(t.entry_for(PeId{1}).conversion, "ycc");
  EXPECT_EQ(t.entry_for(PeId{2}).conversion, "yiq");
  EXPECT_EQ(t.entry_for(PeId{3}).conversion, "cmy");
  EXPECT_THROW(t.entry_for(PeId{4}), Error);
}

TEST(TaskTable, AllConversionsCoversRegistry) {
  const auto t = TaskTable::all_conversions(ArithPath::q88);
  ASSERT_EQ(t.worker_count(), 4);
  for (int i = 1; i < t.pe_count(); ++i) {
    EXPECT_EQ(t.entries()[i].conversion, color_space_names()[i - 1]);
    EXPECT_EQ(t.entries()[i].path, ArithPath::q88);
  }
}

TEST(TaskTable, ParseWithCommentsAndBlankLines) {
  const auto t = TaskTable::parse(
      "# array\n"
      "\n"
      "0 master - -\n"
      "1 rgb_to_ycc ycc real   # first worker\n"
      "   2 rgb_to_yiq yiq q88\n");
  ASSERT_EQ(t.pe_count(), 3);
  EXPECT_EQ(t.entries()[1], (TaskEntry{"rgb_to_ycc", PeId{1}, "ycc", ArithPath::real}));
  EXPECT_EQ(t.entries()[2], (TaskEntry{"rgb_to_yiq", PeId{2}, "yiq", ArithPath::q88}));
}

TEST(TaskTable, TextRoundTrip) {
  const auto t = TaskTable::all_conversions();
  EXPECT_EQ(TaskTable::parse(t.to_text()).entries(), t.entries());
  EXPECT_EQ(TaskTable::default_array().to_text(),
            "0 master - -\n1 rgb_to_ycc ycc real\n2 rgb_to_yiq yiq real\n"
            "3 rgb_to_cmy cmy real\n");
}

TEST(TaskTable, DegenerateTwoPeArray) {
  const auto t = TaskTable::parse("0 master - -\n1 only cmy real\n");
  EXPECT_EQ(t.pe_count(), 2);
  EXPECT_EQ(t.worker_count(), 1);
}

TEST(TaskTable, StructuralErrors) {
  EXPECT_EQ(table_error("0 master - -\n1 a ycc real\n1 b yiq real\n"), Errc::malformed_table);
  EXPECT_EQ(table_error("1 a ycc real\n0 master - -\n"), Errc::malformed_table);
  EXPECT_EQ(table_error("1 a ycc real\n2 b yiq real\n"), Errc::malformed_table);
  EXPECT_EQ(table_error("0 master - -\n"), Errc::malformed_table);
  EXPECT_EQ(table_error(""), Errc::malformed_table);
  EXPECT_EQ(table_error("0 master - -\n2 a ycc real\n"), Errc::malformed_table);
  EXPECT_EQ(table_error("0 master - -\n1 a ycc real\n2 b ycc real\n"), Errc::malformed_table);
}

TEST(TaskTable, LineErrors) {
  EXPECT_EQ(table_error("0 master -\n"), Errc::malformed_table);
  EXPECT_EQ(table_error("0 master - - extra\n"), Errc::malformed_table);
  EXPECT_EQ(table_error("zero master - -\n1 a ycc real\n"), Errc::malformed_table);
  EXPECT_EQ(table_error("0 master - -\n1 a ycc fixed\n"), Errc::malformed_table);
}

TEST(TaskTable, LoadFromFile) {
  scpa::testing::TempDir dir("table");
  {
    std::ofstream f(dir / "t.txt");
    f << TaskTable::default_array().to_text();
  }
  EXPECT_EQ(TaskTable::load(dir / "t.txt").entries(), TaskTable::default_array().entries());
  try {
    TaskTable::load(dir / "missing.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::io_failure);
  }
}

}  // namespace
}  // namespace scpa
