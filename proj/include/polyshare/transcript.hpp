#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polyshare/field.hpp"
#include "polyshare/matrix.hpp"

namespace polyshare {

enum class Phase { sharing, compute, reconstruction };

struct Actor {
    enum class Kind { master, source, worker } kind = Kind::master;
    std::size_t index = 0;  // 0-based; unused for master

    static Actor master() { return {Kind::master, 0}; }
    static Actor source(std::size_t i) { return {Kind::source, i}; }
    static Actor worker(std::size_t i) { return {Kind::worker, i}; }

    // Stable 64-bit id feeding the per-actor rng streams.
    u64 id() const { return (static_cast<u64>(kind) << 32) | index; }

    bool operator==(const Actor& o) const { return kind == o.kind && index == o.index; }
};

std::string to_string(const Actor& a);
std::string to_string(Phase p);

struct MessageRecord {
    Phase phase = Phase::compute;
    std::size_t round = 0;
    Actor from;
    Actor to;
    Matrix payload;
    bool local = false;  // worker-to-self delivery; excluded from traffic counters

    bool operator==(const MessageRecord& o) const {
        return phase == o.phase && round == o.round && from == o.from && to == o.to &&
               payload == o.payload && local == o.local;
    }
};

enum class RoundKind { sharing, reshare_multiply, reshare_transpose, reshare_change_basis, output };

struct RoundInfo {
    std::size_t round = 0;
    RoundKind kind = RoundKind::sharing;
    std::size_t basis = 1;  // sharing basis of the polynomials sent this round
};

// Append-only message log. Records are appended in canonical
// (round, from, to) order by the round-synchronous engine, so a fixed seed
// reproduces the log bit-for-bit.
class RunTranscript {
  public:
    void append(MessageRecord rec) { records_.push_back(std::move(rec)); }
    void note_round(RoundInfo info) { rounds_.push_back(info); }

    const std::vector<MessageRecord>& records() const { return records_; }
    const std::vector<RoundInfo>& rounds() const { return rounds_; }

    u64 total_payload_elements() const {
        u64 total = 0;
        for (const auto& r : records_) total += r.payload.size();
        return total;
    }

    bool operator==(const RunTranscript& o) const { return records_ == o.records_; }

  private:
    std::vector<MessageRecord> records_;
    std::vector<RoundInfo> rounds_;
};

struct TrafficCounters {
    u64 source_to_worker = 0;  // field elements
    u64 inter_worker = 0;      // field elements, self-messages excluded
    u64 self_worker = 0;       // field elements delivered worker-to-self
    u64 worker_to_master = 0;  // field elements
    std::vector<u64> per_round_inter_worker;  // one entry per reshare round
    std::vector<u64> worker_mults;            // field multiplications per worker

    u64 total_elements() const { return source_to_worker + inter_worker + self_worker + worker_to_master; }
};

}  // namespace polyshare
