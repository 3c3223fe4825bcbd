#pragma once

#include "cmatch/mv_part.hpp"

namespace cmatch {

/// Phase schedule derived from the maximal-matching bound s_hat = 2|M*|.
struct Schedule {
    int s_hat = 0;

    static int ceil_sqrt(int x) {
        int r = 0;
        while (r * r < x) ++r;
        return r;
    }
    int phase_a_count() const { return std::max(0, s_hat - ceil_sqrt(s_hat)); }
    int phase_b_count() const { return ceil_sqrt(s_hat); }
    /// ell_i = ceil(2*s_hat / (s_hat - i)) for the i-th first-phase iteration.
    int ell(int i) const {
        int d = s_hat - i;
        if (d <= 0) return 2 * s_hat + 1;
        return (2 * s_hat + d - 1) / d;
    }
};

/// Randomized distributed maximal matching by proposals. Retries with derived
/// seeds if a run exceeds its round budget; the attempt count lands in the
/// report under phase "maximal-matching".
Matching maximal_matching(const Graph& g, uint64_t seed, sim::RoundReport& report,
                          const sim::SimConfig& cfg = {}, int* retries = nullptr);

/// BFS-tree flood from the max-id node, convergecast of |M*|, broadcast of
/// s_hat = 2|M*|. Returns the value every node agreed on.
int broadcast_shat(const Graph& g, const Matching& mstar, sim::RoundReport& report,
                   const sim::SimConfig& cfg = {});

/// A(M, l): partition, then the quadratic path construction inside every part
/// concurrently. Possibly empty; nonempty whenever a <= l augmenting path
/// exists.
std::vector<Walk> wrapper_a(const Graph& g, const Matching& m, int ell,
                            sim::RoundReport& report, const sim::SimConfig& cfg = {});

/// B(M): partition with a threshold that covers any augmenting path, then the
/// linear construction inside every part concurrently.
std::vector<Walk> wrapper_b(const Graph& g, const Matching& m, int s_hat,
                            sim::RoundReport& report, const sim::SimConfig& cfg = {});

enum class Variant { kHybrid, kSquareOnly, kLinearOnly };

Variant variant_from_string(const std::string& s);
std::string to_string(Variant v);

struct SolveStats {
    int s_hat = 0;
    int maximal_size = 0;
    int matching_after_phase_a = 0;
    int phase_a_iterations = 0;
    int phase_b_iterations = 0;
    int maximal_matching_retries = 0;
    // per iteration: (rounds actually consumed, schedule slice charged)
    std::vector<std::pair<long long, long long>> phase_a_rounds;
    std::vector<std::pair<long long, long long>> phase_b_rounds;
};

struct SolveResult {
    Matching matching;
    sim::RoundReport report;
    SolveStats stats;
};

/// The full driver: preprocessing, first-phase loop over A with the
/// Hopcroft-Karp threshold schedule, second-phase loop over B. Every
/// iteration is charged its synchronous schedule slice (the budget the nodes
/// would wait out), with the unused remainder under "phase-a-slack" /
/// "phase-b-slack".
SolveResult solve(const Graph& g, uint64_t seed, Variant variant = Variant::kHybrid,
                  const sim::SimConfig& cfg = {});

}  // namespace cmatch
