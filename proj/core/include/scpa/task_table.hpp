#pragma once

#include <compare>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "scpa/colorspace.hpp"

namespace scpa {

struct PeId {
  int index = 0;
  friend auto operator<=>(PeId, PeId) = default;
};

inline constexpr PeId kMasterPe{0};

struct TaskEntry {
  std::string task_name;
  PeId pe;
  std::string conversion;  // "-" for the master entry
  ArithPath path = ArithPath::real;
  friend bool operator==(const TaskEntry&, const TaskEntry&) = default;
};

// Ordered dispatch table. Entry 0 is the master task on PE0; every other
// entry names a distinct worker PE. PE indices cover [0, pe_count) exactly.
class TaskTable {
 public:
  TaskTable() = default;
  // Throws malformed_table on structural problems.
  explicit TaskTable(std::vector<TaskEntry> entries);

  // Plain text: one "pe_index task_name conversion path" line per entry.
  // Blank lines and '#' comments are ignored.
  static TaskTable parse(std::string_view text);
  static TaskTable load(const std::filesystem::path& path);

  // PE0 master; PE1 ycc, PE2 yiq, PE3 cmy.
  static TaskTable default_array();
  // PE0 master plus one worker per registered conversion, in
  // color_space_names() order.
  static TaskTable all_conversions(ArithPath path = ArithPath::real);

  std::string to_text() const;

  const std::vector<TaskEntry>& entries() const noexcept { return entries_; }
  int pe_count() const noexcept { return static_cast<int>(entries_.size()); }
  int worker_count() const noexcept { return pe_count() - 1; }
  const TaskEntry& entry_for(PeId pe) const;

 private:
  std::vector<TaskEntry> entries_;
};

}  // namespace scpa
