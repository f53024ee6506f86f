#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polyshare/circuit.hpp"
#include "polyshare/field.hpp"

namespace polyshare {

// min{2k^2 + 2t - 3, k^2 + kt + t - 2}; the first branch wins iff k < t.
u64 worker_bound(u64 t, u64 k);

// Job-splitting + BGW baselines, and the linear-circuit requirement.
struct BaselineBounds {
    u64 multiply = 0;     // k^2 (2t - 1)
    u64 add = 0;          // k t
    u64 linear_only = 0;  // k + t - 1
};
BaselineBounds baseline_bounds(u64 t, u64 k);

u64 chang_tandon_workers(u64 t, u64 k);  // (k + t - 1)^2
u64 kakar_workers(u64 t, u64 k);         // k^2 + t k + t - 2
u64 gasp_big_workers(u64 t, u64 k);      // same as worker_bound
u64 gasp_small_workers(u64 t, u64 k);    // four-branch piecewise, floor term included

struct SchemeRow {
    std::string scheme;
    u64 workers = 0;
};
std::vector<SchemeRow> table1_compare(u64 t, u64 k);

// Exact counter predictions under this implementation's conventions:
// self-messages excluded from traffic, multiplications counted on matrix
// entries only, every worker performs the same work.
struct CostPrediction {
    u64 sharing_elements = 0;           // Gamma * N * m * (m/k)
    u64 per_round_inter_worker = 0;     // N * (N-1) * m * (m/k)
    u64 reshare_rounds = 0;
    u64 inter_worker_elements = 0;      // rounds * per_round
    u64 master_elements = 0;            // N * m * (m/k)
    u64 per_worker_mults = 0;
    RoundBudget rounds;
};

CostPrediction cost_model(std::size_t t, std::size_t k, std::size_t m, std::size_t n_workers,
                          std::size_t gamma, const Circuit& circuit);

}  // namespace polyshare
