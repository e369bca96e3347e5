#include "scpa/scpa_sim.hpp"

#include <coroutine>
#include <cstdio>
#include <deque>
#include <exception>
#include <utility>

#include "scpa/colorspace.hpp"
#include "scpa/error.hpp"

namespace scpa {

std::uint64_t message_words(const Message& m) noexcept {
  if (const auto* tile = std::get_if<BulkTile>(&m.payload)) {
    return (tile->bytes.size() + 3) / 4;
  }
  return 1;
}

double PeCounters::compute_cycles(const CostWeights& w) const noexcept {
  return w.multiply * static_cast<double>(multiplies) +
         w.add * static_cast<double>(adds) +
         w.subtract * static_cast<double>(subtracts) +
         w.compare * static_cast<double>(compares) +
         w.clamp * static_cast<double>(clamps);
}

double PeCounters::total_cycles(const CostWeights& w) const noexcept {
  return compute_cycles(w) + w.message_word * static_cast<double>(message_words);
}

PeCounters& PeCounters::operator+=(const PeCounters& o) noexcept {
  multiplies += o.multiplies;
  adds += o.adds;
  subtracts += o.subtracts;
  compares += o.compares;
  clamps += o.clamps;
  message_words += o.message_words;
  pixels += o.pixels;
  return *this;
}

PeCounters per_pixel_cost(const ColorMatrix& m) noexcept {
  PeCounters c;
  c.pixels = 1;
  if (m.complement) {
    c.subtracts = 3;
  } else {
    c.multiplies = 9;
    c.adds = 6;
    c.clamps = 3;
  }
  return c;
}

std::string_view to_string(TraceKind k) noexcept {
  switch (k) {
    case TraceKind::task_start: return "task-start";
    case TraceKind::send: return "send";
    case TraceKind::receive: return "receive";
    case TraceKind::yield: return "yield";
    case TraceKind::task_done: return "task-done";
  }
  return "?";
}

std::string format_trace_line(const TraceEvent& e) {
  std::string s = std::to_string(e.ordinal) + " " + std::string(to_string(e.kind)) +
                  " pe=" + std::to_string(e.pe.index) + " peer=";
  s += e.peer ? std::to_string(e.peer->index) : "-";
  s += " seq=";
  s += e.seq ? std::to_string(*e.seq) : "-";
  return s;
}

std::string format_trace(std::span<const TraceEvent> events) {
  std::string out;
  for (const auto& e : events) {
    out += format_trace_line(e);
    out += '\n';
  }
  return out;
}

namespace {

class PeTask {
 public:
  struct promise_type {
    std::exception_ptr error;

    PeTask get_return_object() {
      return PeTask(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    void return_void() noexcept {}
    void unhandled_exception() noexcept { error = std::current_exception(); }
  };

  PeTask() = default;
  explicit PeTask(std::coroutine_handle<promise_type> h) : handle_(h) {}
  PeTask(PeTask&& o) noexcept : handle_(std::exchange(o.handle_, {})) {}
  PeTask& operator=(PeTask&& o) noexcept {
    if (this != &o) {
      reset();
      handle_ = std::exchange(o.handle_, {});
    }
    return *this;
  }
  ~PeTask() { reset(); }

  void resume() { handle_.resume(); }
  bool done() const { return handle_.done(); }
  std::exception_ptr error() const { return handle_.promise().error; }

 private:
  void reset() {
    if (handle_) handle_.destroy();
    handle_ = {};
  }
  std::coroutine_handle<promise_type> handle_;
};

enum class RequestKind { none, send, receive, yield, host_input };

struct Request {
  RequestKind kind = RequestKind::none;
  PeId dst;
  std::variant<BulkTile, Control> payload;
};

enum class Phase { idle, spawned, running, finished };

}  // namespace

struct Runtime::State {
  struct Pe {
    TaskEntry entry;
    Phase phase = Phase::idle;
    PeTask task;
    Request pending;
    std::deque<Message> inbox;
    std::optional<Message> delivered;
    PeCounters counters;
  };

  struct Channel {
    std::uint64_t next_seq = 0;
    ChannelStats stats;
  };

  TaskTable table;
  int tile_rows = 1;
  CostWeights weights;
  std::vector<std::unique_ptr<Pe>> pes;
  std::map<std::pair<int, int>, Channel> channels;
  std::vector<TraceEvent> trace;
  std::size_t cursor = 0;

  std::optional<Image> host_image;
  bool scattered = false;
  bool consumed = false;
  std::map<std::string, Image> results;
  std::vector<std::string> failures;

  // --- task bodies --------------------------------------------------------
  //
  // A body records what it wants next in Pe::pending and then parks. The
  // scheduler performs the request and resumes the body on a later slice.
  // Values cross the suspension only through Pe fields: GCC 11 miscompiles
  // co_await operands and results that own heap or SSO storage.

  struct Park {
    bool await_ready() const noexcept { return false; }
    void await_suspend(std::coroutine_handle<>) const noexcept {}
    void await_resume() const noexcept {}
  };

  static void request(Pe& pe, RequestKind kind) {
    pe.pending = Request{kind, {}, {}};
  }
  static void request_send(Pe& pe, PeId dst,
                           std::variant<BulkTile, Control> payload) {
    pe.pending = Request{RequestKind::send, dst, std::move(payload)};
  }
  static Message take_delivered(Pe& pe) {
    Message m = std::move(*pe.delivered);
    pe.delivered.reset();
    return m;
  }

  static PeTask master_task(State& st, Pe& self) {
    request(self, RequestKind::host_input);
    co_await Park{};
    const Image img = std::move(*st.host_image);

    std::vector<PeId> workers;
    for (const auto& e : st.table.entries()) {
      if (e.pe != kMasterPe) workers.push_back(e.pe);
    }
    for (const PeId w : workers) {
      st.pes[w.index]->phase = Phase::spawned;
      st.results.emplace(st.pes[w.index]->entry.conversion,
                         Image::rgb(img.width(), img.height()));
    }

    for (int row0 = 0; row0 < img.height(); row0 += st.tile_rows) {
      const int rows = std::min(st.tile_rows, img.height() - row0);
      for (const PeId w : workers) {
        BulkTile tile{row0, rows, img.width(), img.channels(), {}};
        for (int y = row0; y < row0 + rows; ++y) {
          auto r = img.row(y);
          tile.bytes.insert(tile.bytes.end(), r.begin(), r.end());
        }
        request_send(self, w, std::move(tile));
        co_await Park{};
      }
    }
    for (const PeId w : workers) {
      request_send(self, w, Control{ControlKind::done, 0, {}});
      co_await Park{};
    }

    std::size_t outstanding = workers.size();
    while (outstanding > 0) {
      request(self, RequestKind::receive);
      co_await Park{};
      const Message m = take_delivered(self);
      const auto& conversion = st.pes[m.src.index]->entry.conversion;
      if (const auto* tile = std::get_if<BulkTile>(&m.payload)) {
        Image& out = st.results.at(conversion);
        auto dst = out.samples().subspan(
            static_cast<std::size_t>(tile->row0) * out.row_stride(),
            tile->bytes.size());
        std::copy(tile->bytes.begin(), tile->bytes.end(), dst.begin());
        continue;
      }
      const auto& ctl = std::get<Control>(m.payload);
      if (ctl.kind == ControlKind::error) {
        st.failures.push_back("PE" + std::to_string(m.src.index) + " (" +
                              conversion + "): " + ctl.detail);
      }
      --outstanding;
    }
  }

  static PeTask worker_task(Pe& self) {
    const ColorMatrix* matrix = nullptr;
    std::string failure;
    try {
      matrix = &color_matrix(self.entry.conversion);
    } catch (const Error& e) {
      failure = e.what();
    }
    const PeCounters unit = matrix ? per_pixel_cost(*matrix) : PeCounters{};

    std::uint64_t pixels = 0;
    for (;;) {
      request(self, RequestKind::receive);
      co_await Park{};
      Message m = take_delivered(self);
      if (std::holds_alternative<Control>(m.payload)) break;
      if (!failure.empty()) continue;

      BulkTile tile = std::move(std::get<BulkTile>(m.payload));
      std::vector<std::uint8_t> converted(tile.bytes.size());
      convert_span(tile.bytes, converted, *matrix, self.entry.path);
      tile.bytes = std::move(converted);
      const std::uint64_t n =
          static_cast<std::uint64_t>(tile.rows) * static_cast<std::uint64_t>(tile.width);
      PeCounters cost;
      cost.multiplies = unit.multiplies * n;
      cost.adds = unit.adds * n;
      cost.subtracts = unit.subtracts * n;
      cost.compares = unit.compares * n;
      cost.clamps = unit.clamps * n;
      cost.pixels = n;
      self.counters += cost;
      pixels += n;

      request(self, RequestKind::yield);
      co_await Park{};
      request_send(self, kMasterPe, std::move(tile));
      co_await Park{};
    }
    if (failure.empty()) {
      request_send(self, kMasterPe, Control{ControlKind::done, pixels, {}});
    } else {
      request_send(self, kMasterPe, Control{ControlKind::error, 0, failure});
    }
    co_await Park{};
  }

  // --- scheduler ----------------------------------------------------------

  TraceEvent emit(TraceKind kind, PeId pe, std::optional<PeId> peer = {},
                  std::optional<std::uint64_t> seq = {}) {
    TraceEvent e{trace.size(), kind, pe, peer, seq};
    trace.push_back(e);
    return e;
  }

  Channel& channel(PeId src, PeId dst) {
    auto [it, inserted] = channels.try_emplace({src.index, dst.index});
    if (inserted) {
      it->second.stats.src = src;
      it->second.stats.dst = dst;
    }
    return it->second;
  }

  TraceEvent perform_send(Pe& pe) {
    Request req = std::exchange(pe.pending, Request{});
    Channel& ch = channel(pe.entry.pe, req.dst);
    Message m{pe.entry.pe, req.dst, ch.next_seq++, std::move(req.payload)};
    const auto words = message_words(m);
    pe.counters.message_words += words;
    ch.stats.sent_messages += 1;
    if (const auto* tile = std::get_if<BulkTile>(&m.payload)) {
      ch.stats.sent_bulk_bytes += tile->bytes.size();
    }
    const auto seq = m.seq;
    const auto dst = m.dst;
    pes[dst.index]->inbox.push_back(std::move(m));
    return emit(TraceKind::send, pe.entry.pe, dst, seq);
  }

  TraceEvent perform_receive(Pe& pe) {
    Message m = std::move(pe.inbox.front());
    pe.inbox.pop_front();
    pe.counters.message_words += message_words(m);
    Channel& ch = channel(m.src, m.dst);
    ch.stats.received_messages += 1;
    ch.stats.received_seqs.push_back(m.seq);
    if (const auto* tile = std::get_if<BulkTile>(&m.payload)) {
      ch.stats.received_bulk_bytes += tile->bytes.size();
      ch.stats.bulk_received += 1;
    } else {
      ch.stats.control_received += 1;
    }
    const auto src = m.src;
    const auto seq = m.seq;
    pe.delivered = std::move(m);
    pe.pending = Request{};
    return emit(TraceKind::receive, pe.entry.pe, src, seq);
  }

  std::optional<TraceEvent> advance(Pe& pe) {
    switch (pe.phase) {
      case Phase::idle:
      case Phase::finished:
        return std::nullopt;
      case Phase::spawned:
        pe.phase = Phase::running;
        return emit(TraceKind::task_start, pe.entry.pe);
      case Phase::running:
        break;
    }
    for (;;) {
      switch (pe.pending.kind) {
        case RequestKind::receive:
          if (pe.inbox.empty()) return std::nullopt;
          return perform_receive(pe);
        case RequestKind::host_input:
          if (!host_image) return std::nullopt;
          pe.pending = Request{};
          break;
        case RequestKind::send:
          return perform_send(pe);
        case RequestKind::yield:
          pe.pending = Request{};
          return emit(TraceKind::yield, pe.entry.pe);
        case RequestKind::none:
          break;
      }
      pe.task.resume();
      if (pe.task.done()) {
        pe.phase = Phase::finished;
        if (auto err = pe.task.error()) std::rethrow_exception(err);
        return emit(TraceKind::task_done, pe.entry.pe);
      }
      // A receive whose message is already waiting completes in this slice;
      // otherwise the PE blocks and the slice emits nothing.
    }
  }

  std::optional<TraceEvent> step() {
    const std::size_t n = pes.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t idx = (cursor + i) % n;
      if (auto e = advance(*pes[idx])) {
        cursor = (idx + 1) % n;
        return e;
      }
    }
    return std::nullopt;
  }

  bool all_finished() const {
    for (const auto& pe : pes) {
      if (pe->phase != Phase::finished) return false;
    }
    return true;
  }
};

Runtime::Runtime() = default;
Runtime::~Runtime() = default;
Runtime::Runtime(Runtime&&) noexcept = default;
Runtime& Runtime::operator=(Runtime&&) noexcept = default;

namespace {

template <typename S>
S& require(const std::unique_ptr<S>& s, const char* op) {
  if (!s) {
    throw Error(Errc::not_initialized,
                std::string(op) + " called before init_runtime");
  }
  return *s;
}

}  // namespace

Runtime init_runtime(const TaskTable& table, int tile_rows,
                     const CostWeights& weights) {
  if (tile_rows <= 0) {
    throw Error(Errc::invalid_argument, "tile_rows must be positive");
  }
  // Re-validate: a default-constructed table is empty.
  TaskTable checked(table.entries());

  Runtime run;
  run.state_ = std::make_unique<Runtime::State>();
  auto& st = *run.state_;
  st.table = std::move(checked);
  st.tile_rows = tile_rows;
  st.weights = weights;
  st.pes.resize(st.table.pe_count());
  for (const auto& e : st.table.entries()) {
    auto pe = std::make_unique<Runtime::State::Pe>();
    pe->entry = e;
    st.pes[e.pe.index] = std::move(pe);
  }
  for (auto& pe : st.pes) {
    pe->task = pe->entry.pe == kMasterPe
                   ? Runtime::State::master_task(st, *pe)
                   : Runtime::State::worker_task(*pe);
  }
  st.pes[kMasterPe.index]->phase = Phase::spawned;
  return run;
}

void Runtime::scatter(const Image& img) {
  auto& st = require(state_, "scatter");
  require_rgb(img, "scatter");
  if (st.scattered) {
    throw Error(Errc::invalid_argument, "image already scattered for this run");
  }
  st.host_image = img;
  st.scattered = true;
}

std::optional<TraceEvent> Runtime::step() {
  return require(state_, "step").step();
}

void Runtime::run() {
  auto& st = require(state_, "run");
  while (st.step()) {
  }
}

bool Runtime::finished() const {
  return require(state_, "finished").all_finished();
}

std::map<std::string, Image> Runtime::gather() {
  auto& st = require(state_, "gather");
  if (st.consumed) {
    throw Error(Errc::results_consumed, "results were already gathered");
  }
  if (!st.scattered) {
    throw Error(Errc::invalid_argument, "gather before scatter");
  }
  while (st.step()) {
  }
  if (!st.all_finished()) {
    throw Error(Errc::worker_failure, "array stalled before every task finished");
  }
  st.consumed = true;
  if (!st.failures.empty()) {
    std::string detail;
    for (const auto& f : st.failures) {
      if (!detail.empty()) detail += "; ";
      detail += f;
    }
    throw Error(Errc::worker_failure, detail);
  }
  return std::move(st.results);
}

const TaskTable& Runtime::table() const { return require(state_, "table").table; }
const CostWeights& Runtime::weights() const {
  return require(state_, "weights").weights;
}
int Runtime::tile_rows() const { return require(state_, "tile_rows").tile_rows; }
const std::vector<TraceEvent>& Runtime::trace() const {
  return require(state_, "trace").trace;
}

std::vector<PeCounters> Runtime::counters() const {
  const auto& st = require(state_, "counters");
  std::vector<PeCounters> out;
  for (const auto& pe : st.pes) out.push_back(pe->counters);
  return out;
}

std::vector<ChannelStats> Runtime::channels() const {
  const auto& st = require(state_, "channels");
  std::vector<ChannelStats> out;
  for (const auto& [key, ch] : st.channels) out.push_back(ch.stats);
  return out;
}

const LedgerRow& LedgerReport::at(std::string_view conversion) const {
  for (const auto& r : rows) {
    if (r.conversion == conversion) return r;
  }
  throw Error(Errc::invalid_argument,
              "no ledger row for '" + std::string(conversion) + "'");
}

LedgerReport ledger_report(const Runtime& run) {
  if (!run.initialized()) {
    throw Error(Errc::not_initialized, "ledger_report before init_runtime");
  }
  if (!run.finished()) {
    throw Error(Errc::run_incomplete, "ledger requested before the run finished");
  }
  const auto counters = run.counters();
  const auto& w = run.weights();
  LedgerReport report;
  for (const auto& e : run.table().entries()) {
    if (e.pe == kMasterPe) continue;
    const auto& c = counters[e.pe.index];
    LedgerRow row;
    row.conversion = e.conversion;
    row.pe = e.pe;
    row.pixels = c.pixels;
    row.compute_cycles = c.compute_cycles(w);
    row.message_words = c.message_words;
    const double total = c.total_cycles(w);
    row.pixels_per_cycle =
        row.compute_cycles > 0 ? static_cast<double>(c.pixels) / row.compute_cycles : 0.0;
    row.pixels_per_cycle_with_ipc =
        total > 0 ? static_cast<double>(c.pixels) / total : 0.0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string format_ledger(const LedgerReport& report) {
  std::string out =
      "conversion  pe  pixels      compute_cycles  message_words  px/cycle  px/cycle+ipc\n";
  char line[160];
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-10s  %-2d  %-10llu  %-14.0f  %-13llu  %-8.5f  %.5f\n",
                  r.conversion.c_str(), r.pe.index,
                  static_cast<unsigned long long>(r.pixels), r.compute_cycles,
                  static_cast<unsigned long long>(r.message_words),
                  r.pixels_per_cycle, r.pixels_per_cycle_with_ipc);
    out += line;
  }
  return out;
}

}  // namespace scpa
