#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polyshare/field.hpp"
#include "polyshare/sharing.hpp"
#include "polyshare/transcript.hpp"

namespace polyshare {

// Public reconstruction tables the workers of one round agree on. The rows
// are indexed by target coefficient and have one entry per worker; entries
// past the square solve window are zero.
struct ResharePlan {
    std::vector<u64> support;              // exponent set the solve ran over
    std::vector<std::vector<u64>> recon;   // rows[target][worker]
    std::size_t out_basis = 1;
};

// Round-synchronous execution state shared by the five procedures: field,
// params, seeded randomness, message log and counters. One engine per run.
class ProtocolEngine {
  public:
    ProtocolEngine(const FieldContext& ctx, SharingParams params, std::size_t m, u64 run_seed);

    const FieldContext& ctx() const { return *ctx_; }
    const SharingParams& params() const { return params_; }
    std::size_t m() const { return m_; }
    u64 run_seed() const { return run_seed_; }

    RunTranscript& transcript() { return transcript_; }
    const RunTranscript& transcript() const { return transcript_; }
    TrafficCounters& counters() { return counters_; }
    const TrafficCounters& counters() const { return counters_; }

    std::size_t next_round() { return round_counter_++; }
    std::size_t rounds_used() const { return round_counter_; }

    // Step 2+3 of the reshare procedures: every worker (b,t,k)-shares its
    // local m x m matrix with fresh masks, sends one evaluation to every
    // worker (self included, flagged local), and every worker sums what it
    // received.
    ShareBundle reshare_round(const std::vector<Matrix>& locals, std::size_t basis, RoundKind kind,
                              std::string label);

  private:
    const FieldContext* ctx_;
    SharingParams params_;
    std::size_t m_;
    u64 run_seed_;
    std::size_t round_counter_ = 1;  // round 0 is the sharing phase
    RunTranscript transcript_;
    TrafficCounters counters_;
};

// Worker-local, zero-communication procedures.
ShareBundle add_shares(const FieldContext& ctx, const ShareBundle& a, const ShareBundle& b);
ShareBundle scale_shares(const FieldContext& ctx, const ShareBundle& a, u64 q,
                         TrafficCounters* counters = nullptr);

// Shares of A in (1,t,k) and B in (k,t,k) -> shares of A^T B in (out_basis,t,k).
ShareBundle multiply_shares(ProtocolEngine& eng, const ShareBundle& a, const ShareBundle& b,
                            std::size_t out_basis);

// Shares of A in (b,t,k) -> shares of A^T in (b,t,k).
ShareBundle transpose_shares(ProtocolEngine& eng, const ShareBundle& a);

// Shares of A in (b,t,k) -> shares of A in (new_basis,t,k).
ShareBundle change_basis(ProtocolEngine& eng, const ShareBundle& a, std::size_t new_basis);

// Reconstruction tables. Exposed for tests and for the analytics cross-checks.
ResharePlan make_multiply_plan(const FieldContext& ctx, const SharingParams& params,
                               std::size_t out_basis);
ResharePlan make_data_plan(const FieldContext& ctx, const SharingParams& params, std::size_t in_basis,
                           std::size_t out_basis);

}  // namespace polyshare
