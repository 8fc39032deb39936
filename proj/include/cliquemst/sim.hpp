#pragma once

// Round-synchronous execution engine for n processors.
//
// Communication happens on three surfaces, all feeding one ledger:
//   - direct sends: at most one MessageWord per ordered processor pair per
//     round, enforced by the engine;
//   - routed batches: many-to-many deliveries with per-processor caps,
//     billed as one routing invocation per round that uses them;
//   - clique_sort: a balanced sorted redistribution, billed as one routing
//     invocation regardless of how many disjoint groups sort at once.
//
// Routing and sorting are accounted primitives, not protocols: the ledger
// tracks their word counts and invocation counts separately from direct
// traffic, so either billing convention can be reconstructed.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cliquemst {

using ProcId = std::uint32_t;

/// One accounted unit of communication: up to three machine words
/// (typically two ids and an edge reference). Small bounded counters may be
/// packed into a slot; the unit stays O(log n) bits.
struct MessageWord {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
};

struct Delivery {
  ProcId src = 0;
  MessageWord w;
};

struct Inbox {
  std::vector<Delivery> direct;
  std::vector<Delivery> routed;
};

struct Outbox {
  std::vector<std::pair<ProcId, MessageWord>> direct;
  std::vector<std::pair<ProcId, MessageWord>> routed;
  bool halt = false;

  void send(ProcId dst, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    direct.emplace_back(dst, MessageWord{a, b, c});
  }
  void route(ProcId dst, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    routed.emplace_back(dst, MessageWord{a, b, c});
  }
};

/// Per-processor state machine. step must be a pure function of the local
/// state and the inbox: no shared mutable state, no randomness.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual Outbox step(std::uint64_t round, const Inbox& in) = 0;
};

class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};
class ProtocolViolation : public SimError {
 public:
  ProtocolViolation(std::uint64_t round, ProcId proc, const std::string& what)
      : SimError("protocol violation at round " + std::to_string(round) + ", processor " +
                 std::to_string(proc) + ": " + what),
        round(round), proc(proc) {}
  std::uint64_t round;
  ProcId proc;
};
class CapacityError : public SimError {
 public:
  CapacityError(ProcId proc, const std::string& what)
      : SimError("capacity exceeded at processor " + std::to_string(proc) + ": " + what),
        proc(proc) {}
  ProcId proc;
};
class NonTermination : public SimError {
 public:
  explicit NonTermination(std::uint64_t limit)
      : SimError("round limit " + std::to_string(limit) + " exceeded") {}
};
class AccountingError : public SimError {
 public:
  explicit AccountingError(const std::string& msg) : SimError("accounting violation: " + msg) {}
};

struct EngineConfig {
  std::uint32_t c_route = 4;        // routed cap per processor = c_route * n
  std::uint32_t c_sort = 4;         // slack factor allowed in sort balance
  std::uint32_t rounds_per_route = 1;
  std::uint32_t threads = 1;        // >1 steps programs concurrently
  bool record_channels = false;     // keep (round, src, dst) tuples for audits
};

/// Per-round, per-processor message-word counts plus totals. Direct and
/// routed traffic are tracked separately (see file header).
struct CommunicationLedger {
  struct PerRound {
    std::vector<std::uint32_t> direct_sent, direct_recv, routed_sent, routed_recv;
  };
  struct ChannelUse {
    std::uint64_t round;
    ProcId src, dst;
    bool routed;
  };

  std::uint64_t rounds = 0;               // engine barriers executed
  std::uint64_t routing_invocations = 0;  // rounds that used routing, plus standalone calls
  std::uint64_t routing_rounds = 0;       // invocations * rounds_per_route
  std::uint64_t sort_invocations = 0;
  std::uint64_t total_direct_words = 0;
  std::uint64_t total_routed_words = 0;
  std::uint64_t max_proc_round_words = 0; // max over (round, proc) of sent+recv
  std::vector<PerRound> per_round;        // one row per barrier or primitive call
  std::vector<ChannelUse> channels;       // populated only when record_channels

  std::uint64_t total_words() const { return total_direct_words + total_routed_words; }

  bool operator==(const CommunicationLedger& o) const {
    return rounds == o.rounds && routing_invocations == o.routing_invocations &&
           routing_rounds == o.routing_rounds && sort_invocations == o.sort_invocations &&
           total_direct_words == o.total_direct_words &&
           total_routed_words == o.total_routed_words &&
           max_proc_round_words == o.max_proc_round_words && per_round_equal(o);
  }

 private:
  bool per_round_equal(const CommunicationLedger& o) const {
    if (per_round.size() != o.per_round.size()) return false;
    for (std::size_t i = 0; i < per_round.size(); ++i) {
      if (per_round[i].direct_sent != o.per_round[i].direct_sent ||
          per_round[i].direct_recv != o.per_round[i].direct_recv ||
          per_round[i].routed_sent != o.per_round[i].routed_sent ||
          per_round[i].routed_recv != o.per_round[i].routed_recv)
        return false;
    }
    return true;
  }
};

/// Keyed record for clique_sort: keys compare lexicographically; equal keys
/// are kept stable by (submitting processor, submission index).
struct SortItem {
  std::array<std::uint64_t, 3> key{};
  MessageWord payload;
};

struct SortChunk {
  std::vector<SortItem> items;
  std::uint64_t first_rank = 0;  // global rank of items.front() within the group
  std::uint64_t total = 0;       // group-wide record count
};

/// coordinator(p) = floor(exclusive_prefix(p) / K). Every coordinator ends
/// up with strictly fewer than 2K items and at most ceil(total/K)
/// coordinators are used.
inline std::vector<std::uint32_t> prefix_assign(const std::vector<std::uint64_t>& sizes,
                                                std::uint64_t capacity) {
  std::vector<std::uint32_t> coord(sizes.size());
  std::uint64_t prefix = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] > capacity)
      throw AccountingError("prefix_assign: set " + std::to_string(i) + " of size " +
                            std::to_string(sizes[i]) + " exceeds capacity " +
                            std::to_string(capacity));
    coord[i] = capacity == 0 ? 0 : static_cast<std::uint32_t>(prefix / capacity);
    prefix += sizes[i];
  }
  return coord;
}

class Engine {
 public:
  explicit Engine(std::uint32_t n, EngineConfig cfg = {}) : n_(n), cfg_(cfg) {
    ledger_.channels.clear();
  }

  std::uint32_t n() const { return n_; }
  const EngineConfig& config() const { return cfg_; }
  CommunicationLedger& ledger() { return ledger_; }
  const CommunicationLedger& ledger() const { return ledger_; }
  std::uint64_t routed_cap() const { return std::uint64_t{cfg_.c_route} * n_; }

  /// Lock-step barrier execution: within a round all step functions see the
  /// previous round's inboxes; delivery is atomic at the barrier. Runs until
  /// every program has halted or the limit is hit.
  void run(std::span<NodeProgram* const> programs, std::uint64_t round_limit) {
    if (programs.size() != n_) throw SimError("run: need exactly n programs");
    std::vector<Inbox> inboxes(n_);
    std::vector<char> halted(n_, 0);
    std::uint32_t alive = n_;
    std::uint64_t local_round = 0;

    while (alive > 0) {
      if (local_round >= round_limit) throw NonTermination(round_limit);
      const std::uint64_t round = ledger_.rounds;

      std::vector<Outbox> out(n_);
      auto step_range = [&](ProcId lo, ProcId hi) {
        for (ProcId p = lo; p < hi; ++p) {
          if (halted[p]) {
            if (!inboxes[p].direct.empty() || !inboxes[p].routed.empty())
              throw ProtocolViolation(round, p, "message delivered to halted processor");
            continue;
          }
          out[p] = programs[p]->step(round, inboxes[p]);
        }
      };
      if (cfg_.threads <= 1 || n_ < 2 * cfg_.threads) {
        step_range(0, n_);
      } else {
        // steps touch only their own state and inbox; aggregation below is
        // sequential and order-independent either way
        std::vector<std::thread> pool;
        const std::uint32_t chunk = (n_ + cfg_.threads - 1) / cfg_.threads;
        std::exception_ptr err;
        std::mutex err_mu;
        for (std::uint32_t t = 0; t < cfg_.threads; ++t) {
          const ProcId lo = t * chunk, hi = std::min(n_, (t + 1) * chunk);
          if (lo >= hi) break;
          pool.emplace_back([&, lo, hi] {
            try {
              step_range(lo, hi);
            } catch (...) {
              std::scoped_lock lk(err_mu);
              if (!err) err = std::current_exception();
            }
          });
        }
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
      }

      for (auto& ib : inboxes) {
        ib.direct.clear();
        ib.routed.clear();
      }

      CommunicationLedger::PerRound row;
      row.direct_sent.assign(n_, 0);
      row.direct_recv.assign(n_, 0);
      row.routed_sent.assign(n_, 0);
      row.routed_recv.assign(n_, 0);

      bool any_routed = false;
      std::vector<std::uint64_t> dest_seen_round(n_, ~std::uint64_t{0});
      for (ProcId p = 0; p < n_; ++p) {
        if (halted[p]) continue;
        const Outbox& ob = out[p];
        for (const auto& [dst, w] : ob.direct) {
          if (dst >= n_) throw ProtocolViolation(round, p, "direct destination out of range");
          if (dst == p) throw ProtocolViolation(round, p, "direct self-message");
          if (dest_seen_round[dst] == (std::uint64_t{round} << 32 | p))
            throw ProtocolViolation(round, p,
                                    "two direct messages to destination " + std::to_string(dst) +
                                        " in one round");
          dest_seen_round[dst] = std::uint64_t{round} << 32 | p;
          inboxes[dst].direct.push_back({p, w});
          ++row.direct_sent[p];
          ++row.direct_recv[dst];
          ++ledger_.total_direct_words;
          if (cfg_.record_channels) ledger_.channels.push_back({round, p, dst, false});
        }
        if (!ob.routed.empty()) {
          if (ob.routed.size() > routed_cap())
            throw CapacityError(p, "routing source count " + std::to_string(ob.routed.size()) +
                                       " exceeds cap " + std::to_string(routed_cap()));
          any_routed = true;
          for (const auto& [dst, w] : ob.routed) {
            if (dst >= n_) throw ProtocolViolation(round, p, "routed destination out of range");
            inboxes[dst].routed.push_back({p, w});
            ++row.routed_sent[p];
            ++row.routed_recv[dst];
            ++ledger_.total_routed_words;
            if (cfg_.record_channels) ledger_.channels.push_back({round, p, dst, true});
          }
        }
        if (ob.halt) {
          halted[p] = 1;
          --alive;
        }
      }
      for (ProcId p = 0; p < n_; ++p) {
        if (row.routed_recv[p] > routed_cap())
          throw CapacityError(p, "routing destination count " + std::to_string(row.routed_recv[p]) +
                                     " exceeds cap " + std::to_string(routed_cap()));
      }
      if (any_routed) {
        ++ledger_.routing_invocations;
        ledger_.routing_rounds += cfg_.rounds_per_route;
      }
      finish_row(row);
      ++ledger_.rounds;
      ++local_round;
    }
    for (ProcId p = 0; p < n_; ++p)
      if (!inboxes[p].direct.empty() || !inboxes[p].routed.empty())
        throw ProtocolViolation(ledger_.rounds, p, "message outstanding after all programs halted");
  }

  /// Standalone routed delivery: one accounted invocation. The batch is
  /// given per source processor.
  std::vector<std::vector<Delivery>> route(
      const std::vector<std::vector<std::pair<ProcId, MessageWord>>>& per_src) {
    if (per_src.size() != n_) throw SimError("route: need n source lists");
    std::vector<std::vector<Delivery>> delivery(n_);
    CommunicationLedger::PerRound row;
    row.direct_sent.assign(n_, 0);
    row.direct_recv.assign(n_, 0);
    row.routed_sent.assign(n_, 0);
    row.routed_recv.assign(n_, 0);
    bool any = false;
    for (ProcId p = 0; p < n_; ++p) {
      if (per_src[p].size() > routed_cap())
        throw CapacityError(p, "routing source count " + std::to_string(per_src[p].size()) +
                                   " exceeds cap " + std::to_string(routed_cap()));
      for (const auto& [dst, w] : per_src[p]) {
        if (dst >= n_) throw SimError("route: destination out of range");
        any = true;
        delivery[dst].push_back({p, w});
        ++row.routed_sent[p];
        ++row.routed_recv[dst];
        ++ledger_.total_routed_words;
        if (cfg_.record_channels) ledger_.channels.push_back({ledger_.rounds, p, dst, true});
      }
    }
    for (ProcId p = 0; p < n_; ++p)
      if (row.routed_recv[p] > routed_cap())
        throw CapacityError(p, "routing destination count " + std::to_string(row.routed_recv[p]) +
                                   " exceeds cap " + std::to_string(routed_cap()));
    if (any) {
      ++ledger_.routing_invocations;
      ledger_.routing_rounds += cfg_.rounds_per_route;
      finish_row(row);
    }
    return delivery;
  }

  /// Balanced sorted redistribution. Items are tagged with a group id;
  /// each group sorts independently and its records are spread in
  /// contiguous rank ranges over that group's participant list. One call
  /// is one routing invocation no matter how many groups take part.
  ///
  /// Returns per processor a map group -> received chunk.
  std::vector<std::map<std::uint64_t, SortChunk>> clique_sort(
      const std::vector<std::vector<std::pair<std::uint64_t, SortItem>>>& per_src,
      const std::map<std::uint64_t, std::vector<ProcId>>& groups) {
    if (per_src.size() != n_) throw SimError("clique_sort: need n source lists");
    struct Tagged {
      SortItem item;
      ProcId src;
      std::uint32_t seq;
    };
    std::map<std::uint64_t, std::vector<Tagged>> pools;
    CommunicationLedger::PerRound row;
    row.direct_sent.assign(n_, 0);
    row.direct_recv.assign(n_, 0);
    row.routed_sent.assign(n_, 0);
    row.routed_recv.assign(n_, 0);
    bool any = false;
    for (ProcId p = 0; p < n_; ++p) {
      if (per_src[p].size() > routed_cap())
        throw CapacityError(p, "sort source count " + std::to_string(per_src[p].size()) +
                                   " exceeds cap " + std::to_string(routed_cap()));
      std::uint32_t seq = 0;
      for (const auto& [group, item] : per_src[p]) {
        if (!groups.count(group)) throw SimError("clique_sort: unknown group");
        pools[group].push_back({item, p, seq++});
        ++row.routed_sent[p];
        ++ledger_.total_routed_words;
        any = true;
      }
    }

    std::vector<std::map<std::uint64_t, SortChunk>> result(n_);
    for (auto& [group, pool] : pools) {
      std::sort(pool.begin(), pool.end(), [](const Tagged& x, const Tagged& y) {
        if (x.item.key != y.item.key) return x.item.key < y.item.key;
        if (x.src != y.src) return x.src < y.src;
        return x.seq < y.seq;
      });
      const auto& members = groups.at(group);
      if (members.empty()) throw SimError("clique_sort: empty group");
      const std::uint64_t total = pool.size();
      const std::uint64_t chunk = (total + members.size() - 1) / members.size();
      if (chunk > routed_cap())
        throw CapacityError(members[0], "sort chunk " + std::to_string(chunk) + " exceeds cap " +
                                            std::to_string(routed_cap()));
      for (std::size_t k = 0; k < members.size(); ++k) {
        const std::uint64_t lo = std::min<std::uint64_t>(k * chunk, total);
        const std::uint64_t hi = std::min<std::uint64_t>((k + 1) * chunk, total);
        SortChunk sc;
        sc.first_rank = lo;
        sc.total = total;
        for (std::uint64_t r = lo; r < hi; ++r) sc.items.push_back(pool[r].item);
        row.routed_recv[members[k]] += hi - lo;
        ledger_.total_routed_words += hi - lo;
        if (cfg_.record_channels)
          for (std::uint64_t r = lo; r < hi; ++r)
            ledger_.channels.push_back({ledger_.rounds, pool[r].src, members[k], true});
        result[members[k]].emplace(group, std::move(sc));
      }
    }
    for (ProcId p = 0; p < n_; ++p)
      if (row.routed_recv[p] > routed_cap())
        throw CapacityError(p, "sort destination count " + std::to_string(row.routed_recv[p]) +
                                   " exceeds cap " + std::to_string(routed_cap()));
    if (any) {
      ++ledger_.routing_invocations;
      ledger_.routing_rounds += cfg_.rounds_per_route;
      ++ledger_.sort_invocations;
      finish_row(row);
    }
    return result;
  }

 private:
  void finish_row(CommunicationLedger::PerRound& row) {
    for (ProcId p = 0; p < n_; ++p) {
      const std::uint64_t load = std::uint64_t{row.direct_sent[p]} + row.direct_recv[p] +
                                 row.routed_sent[p] + row.routed_recv[p];
      ledger_.max_proc_round_words = std::max(ledger_.max_proc_round_words, load);
    }
    ledger_.per_round.push_back(std::move(row));
  }

  std::uint32_t n_;
  EngineConfig cfg_;
  CommunicationLedger ledger_;
};

/// A distributed algorithm written as a list of lock-step phases: every
/// processor executes phase k in round k against the messages sent in
/// phase k-1, then halts after the last phase. The final phase must not
/// send (nothing would run to receive).
template <typename State>
using ScriptPhase = std::function<void(ProcId, State&, const Inbox&, Outbox&)>;

template <typename State>
class ScriptProgram : public NodeProgram {
 public:
  ScriptProgram(ProcId me, const std::vector<ScriptPhase<State>>* phases, State* state)
      : me_(me), phases_(phases), state_(state) {}

  Outbox step(std::uint64_t, const Inbox& in) override {
    Outbox out;
    if (next_ < phases_->size()) (*phases_)[next_](me_, *state_, in, out);
    ++next_;
    if (next_ >= phases_->size()) out.halt = true;
    return out;
  }

 private:
  ProcId me_;
  const std::vector<ScriptPhase<State>>* phases_;
  State* state_;
  std::size_t next_ = 0;
};

/// Runs one script over per-processor states already in place; states are
/// mutated and survive the run, so pipelines can chain scripts.
template <typename State>
void run_script(Engine& eng, const std::vector<ScriptPhase<State>>& phases,
                std::vector<State>& states) {
  if (states.size() != eng.n()) throw SimError("run_script: need n states");
  if (phases.empty()) return;
  std::vector<ScriptProgram<State>> programs;
  programs.reserve(eng.n());
  for (ProcId p = 0; p < eng.n(); ++p) programs.emplace_back(p, &phases, &states[p]);
  std::vector<NodeProgram*> ptrs(eng.n());
  for (ProcId p = 0; p < eng.n(); ++p) ptrs[p] = &programs[p];
  eng.run(ptrs, phases.size());
}

}  // namespace cliquemst
