#pragma once

#include "biswarm/bicluster.hpp"
#include "biswarm/objectives.hpp"
#include "biswarm/rng.hpp"

#include <cstddef>
#include <vector>

namespace biswarm {

/// True iff `a` is no worse than `b` on all four minimized objectives and
/// strictly better on at least one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Crowding distances over a set of objective vectors: boundary entries
/// per objective get +infinity, interior entries accumulate the normalized
/// neighbor gap per objective. Objectives with zero range contribute 0.
std::vector<double> crowding_distances(const std::vector<ObjectiveVector>& objectives);

enum class InsertOutcome { Inserted, Dominated, Infeasible };

struct ArchiveEntry {
    Bicluster bicluster;
    ObjectiveVector objectives;
    double crowding = 0.0;
    double overlap_score = 0.0;
};

/// Feasible non-dominated set with capacity control. Invariants: every
/// entry is feasible, no entry dominates another, and size never exceeds
/// hard_cap. Mutating calls are serialized by the caller.
class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t hard_cap = 100, std::size_t prune_to = 50);

    /// Insert a feasible candidate: entries it dominates are removed, the
    /// candidate enters unless dominated, and a capacity overflow evicts
    /// one entry by roulette weighted toward low crowding distance
    /// (boundary entries survive while any finite-distance entry exists).
    InsertOutcome try_insert(ArchiveEntry candidate, Rng& rng);

    /// Refresh the stored crowding distances of all entries.
    void recompute_crowding();

    /// Greedily drop the highest-overlap entries until prune_to remain,
    /// rescoring after each removal. Ties prefer removing lower crowding
    /// distance, then the younger entry.
    void prune_by_overlap();

    /// Roulette draw proportional to crowding distance (+infinity entries
    /// weighted at twice the largest finite distance; all-infinite sets
    /// are uniform). Throws EmptyArchiveError when empty.
    const ArchiveEntry& select_gbest(Rng& rng) const;

    const std::vector<ArchiveEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::size_t hard_cap() const { return hard_cap_; }
    std::size_t prune_to() const { return prune_to_; }

private:
    std::vector<ArchiveEntry> entries_;
    std::size_t hard_cap_;
    std::size_t prune_to_;
};

} // namespace biswarm
