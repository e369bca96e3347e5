#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "scpa/image.hpp"
#include "scpa/task_table.hpp"

namespace scpa {

// Row band of pixel data, copied by value into every message that carries it.
struct BulkTile {
  int row0 = 0;
  int rows = 0;
  int width = 0;
  int channels = 0;
  std::vector<std::uint8_t> bytes;
  friend bool operator==(const BulkTile&, const BulkTile&) = default;
};

enum class ControlKind { done, error };

struct Control {
  ControlKind kind = ControlKind::done;
  std::uint64_t pixels = 0;  // result summary carried by `done`
  std::string detail;        // failure text carried by `error`
  friend bool operator==(const Control&, const Control&) = default;
};

struct Message {
  PeId src;
  PeId dst;
  std::uint64_t seq = 0;  // per (src, dst) channel, starting at 0
  std::variant<BulkTile, Control> payload;
};

// 4-byte words a message occupies on the link; control records are one word.
std::uint64_t message_words(const Message& m) noexcept;

// Unit costs of the abstract datapath. Defaults are all 1.
struct CostWeights {
  double multiply = 1.0;
  double add = 1.0;
  double subtract = 1.0;
  double compare = 1.0;
  double clamp = 1.0;
  double message_word = 1.0;
};

struct PeCounters {
  std::uint64_t multiplies = 0;
  std::uint64_t adds = 0;
  std::uint64_t subtracts = 0;
  std::uint64_t compares = 0;
  std::uint64_t clamps = 0;
  std::uint64_t message_words = 0;
  std::uint64_t pixels = 0;

  double compute_cycles(const CostWeights& w) const noexcept;
  double total_cycles(const CostWeights& w) const noexcept;
  PeCounters& operator+=(const PeCounters& o) noexcept;
  friend bool operator==(const PeCounters&, const PeCounters&) = default;
};

// Operation counts for converting one pixel with the named conversion:
// a matrix costs 9 multiplies, 6 adds and 3 clamps, CMY costs 3 subtracts.
PeCounters per_pixel_cost(const ColorMatrix& m) noexcept;

enum class TraceKind { task_start, send, receive, yield, task_done };

std::string_view to_string(TraceKind k) noexcept;

struct TraceEvent {
  std::uint64_t ordinal = 0;
  TraceKind kind = TraceKind::task_start;
  PeId pe;
  std::optional<PeId> peer;          // destination of a send, source of a receive
  std::optional<std::uint64_t> seq;  // channel sequence number for messages
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

// "<ordinal> <kind> pe=<n> peer=<n|-> seq=<n|->"
std::string format_trace_line(const TraceEvent& e);
std::string format_trace(std::span<const TraceEvent> events);

struct ChannelStats {
  PeId src;
  PeId dst;
  std::uint64_t sent_messages = 0;
  std::uint64_t received_messages = 0;
  std::uint64_t sent_bulk_bytes = 0;
  std::uint64_t received_bulk_bytes = 0;
  std::vector<std::uint64_t> received_seqs;  // in delivery order
  std::uint64_t bulk_received = 0;
  std::uint64_t control_received = 0;
};

// Cooperative simulation of a processor array. PE0 runs the master task: it
// takes the scattered image, starts every worker, streams each one the whole
// image as row tiles followed by a `done` control, then collects converted
// tiles until every worker has reported. Workers convert each tile with their
// table entry's conversion and send it straight back.
//
// Scheduling is round-robin in PE-index order. A PE's slice ends when it
// sends, yields, finishes, or receives; one trace event is emitted per slice.
class Runtime {
 public:
  Runtime();  // uninitialized; every operation but initialized() throws
  ~Runtime();
  Runtime(Runtime&&) noexcept;
  Runtime& operator=(Runtime&&) noexcept;

  bool initialized() const noexcept { return state_ != nullptr; }

  // Hands PE0 a private copy of an RGB image. Only one scatter per run.
  void scatter(const Image& img);

  // Runs one slice. nullopt when no PE can make progress: either every task
  // has finished or PE0 is still waiting for scatter().
  std::optional<TraceEvent> step();
  // Steps until step() returns nullopt.
  void run();
  bool finished() const;

  // Runs to completion and returns converted images keyed by conversion name.
  // Throws worker_failure if any worker reported an error, results_consumed
  // on a second call.
  std::map<std::string, Image> gather();

  const TaskTable& table() const;
  const CostWeights& weights() const;
  int tile_rows() const;
  const std::vector<TraceEvent>& trace() const;
  // Indexed by PE.
  std::vector<PeCounters> counters() const;
  std::vector<ChannelStats> channels() const;

 private:
  friend Runtime init_runtime(const TaskTable&, int, const CostWeights&);
  struct State;
  std::unique_ptr<State> state_;
};

Runtime init_runtime(const TaskTable& table, int tile_rows,
                     const CostWeights& weights = {});

struct LedgerRow {
  std::string conversion;
  PeId pe;
  std::uint64_t pixels = 0;
  double compute_cycles = 0.0;
  std::uint64_t message_words = 0;
  double pixels_per_cycle = 0.0;           // compute only
  double pixels_per_cycle_with_ipc = 0.0;  // compute plus message words
};

struct LedgerReport {
  std::vector<LedgerRow> rows;  // one per worker, in PE order
  const LedgerRow& at(std::string_view conversion) const;
};

// Throws run_incomplete until every task has finished.
LedgerReport ledger_report(const Runtime& run);
std::string format_ledger(const LedgerReport& report);

}  // namespace scpa
