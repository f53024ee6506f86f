#include "polyshare/analytics.hpp"

namespace polyshare {

u64 worker_bound(u64 t, u64 k) {
    const u64 a = 2 * k * k + 2 * t - 3;
    const u64 b = k * k + k * t + t - 2;
    return k < t ? a : b;
}

BaselineBounds baseline_bounds(u64 t, u64 k) {
    return {k * k * (2 * t - 1), k * t, k + t - 1};
}

u64 chang_tandon_workers(u64 t, u64 k) { return (k + t - 1) * (k + t - 1); }

u64 kakar_workers(u64 t, u64 k) { return k * k + t * k + t - 2; }

u64 gasp_big_workers(u64 t, u64 k) { return worker_bound(t, k); }

namespace {
// Floor division for a possibly negative numerator (the t=2 case of the
// third branch makes (t-3)/k negative).
long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
}  // namespace

u64 gasp_small_workers(u64 t, u64 k) {
    const long long T = static_cast<long long>(t);
    const long long K = static_cast<long long>(k);
    if (T == 2 && T <= K) return static_cast<u64>(K * K + 2 * K);
    if (3 <= T && T <= K) return static_cast<u64>(K * K + 2 * K + (T - 1) * (T - 1) + T - 4);
    if (K < T && T <= K * (K - 1) + 2) {
        return static_cast<u64>(K * K + K * T + 2 * T - 5 - floor_div(T - 3, K));
    }
    return static_cast<u64>(2 * K * K + K * T + T - 2 * K - 1);
}

std::vector<SchemeRow> table1_compare(u64 t, u64 k) {
    return {
        {"polyshare", worker_bound(t, k)},
        {"job-split-bgw", baseline_bounds(t, k).multiply},
        {"chang-tandon", chang_tandon_workers(t, k)},
        {"kakar", kakar_workers(t, k)},
        {"gasp-big", gasp_big_workers(t, k)},
        {"gasp-small", gasp_small_workers(t, k)},
        {"linear-only", baseline_bounds(t, k).linear_only},
    };
}

CostPrediction cost_model(std::size_t t, std::size_t k, std::size_t m, std::size_t n_workers,
                          std::size_t gamma, const Circuit& circuit) {
    CostPrediction p;
    const u64 share_elems = static_cast<u64>(m) * (m / k);
    const u64 n = n_workers;

    p.rounds = plan_rounds(circuit, k);
    p.reshare_rounds = p.rounds.total();
    p.sharing_elements = static_cast<u64>(gamma) * n * share_elems;
    p.per_round_inter_worker = n * (n - 1) * share_elems;
    p.inter_worker_elements = p.reshare_rounds * p.per_round_inter_worker;
    p.master_elements = n * share_elems;

    // Per-worker multiplications, by procedure:
    //   reshare evaluation: N destinations x (k+t-1) coefficient blocks
    //   multiply: local (m/k) x m x (m/k) product plus the k^2 block scalings
    //   transpose / change-basis: the block scalings only
    const u64 eval_cost = n * static_cast<u64>(k + t - 1) * share_elems;
    const u64 scaling_cost = static_cast<u64>(m) * m;  // k^2 blocks of (m/k)^2 entries
    const u64 local_product = static_cast<u64>(m) * m * m / (k * k);

    p.per_worker_mults = static_cast<u64>(p.rounds.multiply) * (local_product + scaling_cost + eval_cost) +
                         static_cast<u64>(p.rounds.transpose) * (scaling_cost + eval_cost) +
                         static_cast<u64>(p.rounds.change_basis) * (scaling_cost + eval_cost);
    for (const auto& g : circuit.gates) {
        if (g.kind == Gate::Kind::scalar_mul) p.per_worker_mults += share_elems;
    }
    return p;
}

}  // namespace polyshare
