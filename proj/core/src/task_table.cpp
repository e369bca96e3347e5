#include "scpa/task_table.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "scpa/error.hpp"

namespace scpa {

TaskTable::TaskTable(std::vector<TaskEntry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty() || entries_.front().pe != kMasterPe) {
    throw Error(Errc::malformed_table, "first entry must target PE0");
  }
  if (entries_.size() < 2) {
    throw Error(Errc::malformed_table, "array needs at least one worker PE");
  }
  const int count = pe_count();
  std::set<int> seen;
  std::set<std::string> conversions;
  for (const auto& e : entries_) {
    if (e.pe.index < 0 || e.pe.index >= count) {
      throw Error(Errc::malformed_table,
                  "PE" + std::to_string(e.pe.index) + " outside [0, " +
                      std::to_string(count) + ")");
    }
    if (!seen.insert(e.pe.index).second) {
      throw Error(Errc::malformed_table,
                  "duplicate entry for PE" + std::to_string(e.pe.index));
    }
    if (e.task_name.empty()) {
      throw Error(Errc::malformed_table, "empty task name");
    }
    if (e.pe != kMasterPe && !conversions.insert(e.conversion).second) {
      throw Error(Errc::malformed_table,
                  "conversion '" + e.conversion + "' assigned twice");
    }
  }
}

TaskTable TaskTable::parse(std::string_view text) {
  std::vector<TaskEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string pe, name, conversion, path;
    if (!(fields >> pe)) continue;
    std::string extra;
    if (!(fields >> name >> conversion >> path) || (fields >> extra)) {
      throw Error(Errc::malformed_table,
                  "line " + std::to_string(lineno) +
                      ": expected 'pe_index task_name conversion path'");
    }
    TaskEntry e;
    try {
      std::size_t used = 0;
      e.pe.index = std::stoi(pe, &used);
      if (used != pe.size()) throw std::invalid_argument(pe);
    } catch (const std::exception&) {
      throw Error(Errc::malformed_table,
                  "line " + std::to_string(lineno) + ": bad PE index '" + pe + "'");
    }
    e.task_name = name;
    e.conversion = conversion;
    if (path == "-") {
      e.path = ArithPath::real;
    } else if (path == "real" || path == "q88") {
      e.path = parse_arith_path(path);
    } else {
      throw Error(Errc::malformed_table,
                  "line " + std::to_string(lineno) + ": bad path '" + path + "'");
    }
    entries.push_back(std::move(e));
  }
  return TaskTable(std::move(entries));
}

TaskTable TaskTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_failure, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

TaskTable TaskTable::default_array() {
  return TaskTable({
      {"master", PeId{0}, "-", ArithPath::real},
      {"rgb_to_ycc", PeId{1}, "ycc", ArithPath::real},
      {"rgb_to_yiq", PeId{2}, "yiq", ArithPath::real},
      {"rgb_to_cmy", PeId{3}, "cmy", ArithPath::real},
  });
}

TaskTable TaskTable::all_conversions(ArithPath path) {
  std::vector<TaskEntry> entries{{"master", PeId{0}, "-", ArithPath::real}};
  int pe = 1;
  for (auto name : color_space_names()) {
    entries.push_back({"rgb_to_" + std::string(name), PeId{pe++},
                       std::string(name), path});
  }
  return TaskTable(std::move(entries));
}

std::string TaskTable::to_text() const {
  std::string out;
  for (const auto& e : entries_) {
    out += std::to_string(e.pe.index) + " " + e.task_name + " " + e.conversion +
           " " + (e.pe == kMasterPe ? std::string("-")
                                    : std::string(to_string(e.path))) +
           "\n";
  }
  return out;
}

const TaskEntry& TaskTable::entry_for(PeId pe) const {
  for (const auto& e : entries_) {
    if (e.pe == pe) return e;
  }
  throw Error(Errc::invalid_argument, "no entry for PE" + std::to_string(pe.index));
}

}  // namespace scpa
