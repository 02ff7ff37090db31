#pragma once

#include "biswarm/bicluster.hpp"
#include "biswarm/expression_matrix.hpp"
#include "biswarm/objectives.hpp"
#include "biswarm/pareto.hpp"
#include "biswarm/rng.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace biswarm {

struct PsoParams {
    std::size_t pop_size = 200;
    std::size_t max_gen = 100;
    double inertia = 0.729;
    double c1 = 1.49445;
    double c2 = 1.49445;
    double v_max = 4.0;
    double mutation_prob = 0.3;
    double delta = 0.0;
    double alpha = 1.2;
    double init_gene_prob = 0.5;
    double init_cond_prob = 0.5;
    std::uint64_t seed = 0;

    double epsilon_var = kDefaultEpsilonVar;
    std::size_t archive_cap = 100;
    std::size_t prune_to = 50;
    std::size_t ls_max_iterations = 500;
    std::size_t threads = 0; ///< 0: BISWARM_THREADS env, else hardware

    void validate() const;
};

/// One search agent. position packs the gene bits first, then the
/// condition bits; every velocity component stays within [-v_max, v_max].
struct Particle {
    std::vector<std::uint8_t> position;
    std::vector<double> velocity;
    std::vector<std::uint8_t> pbest_position;
    ObjectiveVector pbest_objectives;
    ObjectiveVector current_objectives;
    bool current_valid = false; ///< false when the last evaluation had no present cell
};

inline double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

/// One velocity component of the social/cognitive update, before and after
/// clamping: w*v + c1*r1*(gbest-s) + c2*r2*(pbest-s), clamped to [-v_max, v_max].
double velocity_step(double v, double s, double pbest, double gbest, double w, double c1,
                     double c2, double r1, double r2, double v_max);

void update_velocity(Particle& p, const std::vector<std::uint8_t>& gbest, const PsoParams& params,
                     Rng& rng);

/// Resample every position bit: 1 iff a fresh U[0,1) draw falls below
/// sigmoid(velocity).
void update_position(Particle& p, Rng& rng);

/// With probability mutation_prob, apply one of three operators chosen
/// uniformly: flip one random bit; set one random unset gene bit; set one
/// random unset condition bit (the growth operators no-op when the section
/// is already full).
void mutate(Particle& p, const PsoParams& params, std::size_t n_genes, Rng& rng);

/// Dominance-based personal-best update; mutually non-dominating pairs
/// replace with probability 0.5.
void update_pbest(Particle& p, Rng& rng);

Bicluster decode_position(const std::vector<std::uint8_t>& position, std::size_t n_genes);
std::vector<std::uint8_t> encode_position(const Bicluster& bicluster);

struct GenerationStats {
    std::size_t gen = 0; ///< 1-based
    std::size_t archive_size = 0;
    double best_residue = 0.0;
    double coverage_cells_pct = 0.0;
};

struct RunResult {
    ParetoArchive archive;
    std::vector<GenerationStats> generations;
    double total_seconds = 0.0;
    std::uint64_t seed = 0;
};

/// Observer invoked after each completed generation (post-prune), with the
/// particles exposed for instrumentation.
struct GenerationView {
    std::size_t gen = 0;
    const ParetoArchive& archive;
    const std::vector<Particle>& particles;
};
using GenerationHook = std::function<void(const GenerationView&)>;

/// The full optimization loop: random init + three-phase local search to
/// seed the archive (up to 5 re-initializations, then an infeasibility
/// error naming delta), then max_gen generations of velocity/position
/// updates, mutation, archive insertion of feasible particles,
/// addition-only refinement of the archive, pbest updates and overlap
/// pruning. Deterministic for a fixed seed regardless of thread count.
RunResult run(const ExpressionMatrix& matrix, const PsoParams& params,
              const GenerationHook& hook = {});

} // namespace biswarm
