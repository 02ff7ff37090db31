#include "biswarm/pareto.hpp"

#include "biswarm/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

namespace biswarm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t roulette_pick(const std::vector<double>& weights, Rng& rng) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) {
        return rng.below(weights.size());
    }
    const double r = rng.uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (r < acc) {
            return i;
        }
    }
    return weights.size() - 1;
}

} // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    const auto av = a.values();
    const auto bv = b.values();
    bool strictly_better = false;
    for (std::size_t k = 0; k < av.size(); ++k) {
        if (av[k] > bv[k]) {
            return false;
        }
        if (av[k] < bv[k]) {
            strictly_better = true;
        }
    }
    return strictly_better;
}

std::vector<double> crowding_distances(const std::vector<ObjectiveVector>& objectives) {
    const std::size_t n = objectives.size();
    std::vector<double> dist(n, 0.0);
    if (n == 0) {
        return dist;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < 4; ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double va = objectives[a].values()[k];
            const double vb = objectives[b].values()[k];
            return va != vb ? va < vb : a < b;
        });
        const double lo = objectives[order.front()].values()[k];
        const double hi = objectives[order.back()].values()[k];
        dist[order.front()] = kInf;
        dist[order.back()] = kInf;
        if (hi <= lo) {
            continue;
        }
        for (std::size_t p = 1; p + 1 < n; ++p) {
            const std::size_t idx = order[p];
            if (dist[idx] == kInf) {
                continue;
            }
            const double prev = objectives[order[p - 1]].values()[k];
            const double next = objectives[order[p + 1]].values()[k];
            dist[idx] += (next - prev) / (hi - lo);
        }
    }
    return dist;
}

ParetoArchive::ParetoArchive(std::size_t hard_cap, std::size_t prune_to)
    : hard_cap_(hard_cap), prune_to_(prune_to) {
    if (hard_cap_ == 0 || prune_to_ == 0 || prune_to_ > hard_cap_) {
        throw ConfigError("archive requires 0 < prune_to <= hard_cap");
    }
}

InsertOutcome ParetoArchive::try_insert(ArchiveEntry candidate, Rng& rng) {
    if (!candidate.objectives.feasible) {
        return InsertOutcome::Infeasible;
    }
    for (const auto& e : entries_) {
        if (dominates(e.objectives, candidate.objectives)) {
            return InsertOutcome::Dominated;
        }
    }
    std::erase_if(entries_, [&](const ArchiveEntry& e) {
        return dominates(candidate.objectives, e.objectives);
    });
    entries_.push_back(std::move(candidate));

    if (entries_.size() > hard_cap_) {
        recompute_crowding();
        // Crowded regions go first; boundary entries are protected while
        // any finite-distance entry remains.
        std::vector<double> weights(entries_.size());
        bool any_finite = false;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            any_finite |= !std::isinf(entries_[i].crowding);
        }
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            weights[i] = std::isinf(entries_[i].crowding)
                             ? (any_finite ? 0.0 : 1.0)
                             : 1.0 / (1.0 + entries_[i].crowding);
        }
        entries_.erase(entries_.begin() +
                       static_cast<std::ptrdiff_t>(roulette_pick(weights, rng)));
    }
    return InsertOutcome::Inserted;
}

void ParetoArchive::recompute_crowding() {
    std::vector<ObjectiveVector> objs;
    objs.reserve(entries_.size());
    for (const auto& e : entries_) {
        objs.push_back(e.objectives);
    }
    const std::vector<double> dist = crowding_distances(objs);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i].crowding = dist[i];
    }
}

void ParetoArchive::prune_by_overlap() {
    if (entries_.size() <= prune_to_) {
        return;
    }
    const auto rescore = [&] {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            double worst = 0.0;
            for (std::size_t k = 0; k < entries_.size(); ++k) {
                if (k == i) continue;
                worst = std::max(worst, overlap(entries_[i].bicluster, entries_[k].bicluster));
            }
            entries_[i].overlap_score = worst;
        }
    };
    while (entries_.size() > prune_to_) {
        recompute_crowding();
        rescore();
        std::size_t victim = 0;
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            const auto& a = entries_[i];
            const auto& b = entries_[victim];
            // Ties prefer removing lower crowding, then the younger entry.
            if (a.overlap_score > b.overlap_score ||
                (a.overlap_score == b.overlap_score && a.crowding <= b.crowding)) {
                victim = i;
            }
        }
        entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    rescore();
}

const ArchiveEntry& ParetoArchive::select_gbest(Rng& rng) const {
    if (entries_.empty()) {
        throw EmptyArchiveError("gbest requested from an empty archive");
    }
    double max_finite = 0.0;
    for (const auto& e : entries_) {
        assert(e.objectives.feasible);
        if (!std::isinf(e.crowding)) {
            max_finite = std::max(max_finite, e.crowding);
        }
    }
    std::vector<double> weights(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        weights[i] = std::isinf(entries_[i].crowding) ? 2.0 * max_finite : entries_[i].crowding;
    }
    return entries_[roulette_pick(weights, rng)];
}

} // namespace biswarm
