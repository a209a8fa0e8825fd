#include <algorithm>

#include "common.hpp"

namespace eosb {
namespace {

// Task-indexed gene vector: opportunity per task, or -1.
using Genome = std::vector<int>;

struct Individual {
  Genome genes;
  double score = 0;
};

class Genetic {
 public:
  Genetic(const InstanceIndex& index, const SolverConfig& config)
      : index_(index), config_(config), plan_(index), rng_(mix_seed({config.seed, 0x6aU})) {
    tasks_ = detail::schedulable_tasks(index);
  }

  SolveResult run(const GeneticHooks& hooks) {
    const Objective obj = config_.objective;
    const int size = std::max(2, config_.ga_population);
    std::vector<Individual> pop;
    if (!hooks.initial_population.empty()) {
      for (const auto& opps : hooks.initial_population) {
        Genome g(index_.task_count(), -1);
        for (int o : opps) g[index_.opp(o).task] = o;
        pop.push_back(evaluate(std::move(g), false));
      }
    } else {
      pop = seed_population(size);
    }
    const std::size_t given = pop.size();
    while (static_cast<int>(pop.size()) < size) pop.push_back(pop[pop.size() % given]);

    detail::Tracker tracker;
    std::size_t best = best_of(pop);
    Individual champion = pop[best];
    tracker.offer(0, value_of(champion));
    detail::Deadline deadline(config_.time_limit_s);
    bool cut = false;
    for (int gen = 1; gen <= config_.ga_generations && !tasks_.empty(); ++gen) {
      if (deadline.expired()) {
        cut = true;
        break;
      }
      std::vector<Individual> next;
      next.reserve(pop.size());
      next.push_back(champion);  // elitism
      while (next.size() < pop.size()) {
        const Individual& a = pop[tournament(pop)];
        const Individual& b = pop[tournament(pop)];
        Genome child = crossover(a.genes, b.genes);
        mutate(child);
        next.push_back(evaluate(std::move(child), true));
      }
      pop = std::move(next);
      best = best_of(pop);
      if (pop[best].score > champion.score + 1e-12) {
        champion = pop[best];
        tracker.offer(gen, value_of(champion));
      }
      if (hooks.on_generation) {
        std::vector<std::vector<int>> view;
        for (const Individual& ind : pop) view.push_back(opps_of(ind.genes));
        hooks.on_generation(gen, view);
      }
    }
    detail::rebuild(plan_, opps_of(champion.genes));
    return detail::finish(plan_, obj, !cut, tracker);
  }

 private:
  std::vector<Individual> seed_population(int size) {
    std::vector<Individual> pop;
    // Constructive plans from each greedy rule.
    for (GreedyRule rule : {GreedyRule::kTP, GreedyRule::kTCR, GreedyRule::kTM, GreedyRule::kBD}) {
      if (static_cast<int>(pop.size()) >= size) break;
      const SolveResult g = greedy(index_, rule, config_.seed, 1);
      Genome genes(index_.task_count(), -1);
      for (const Assignment& a : g.schedule.assignments) {
        genes[index_.opp(static_cast<int>(a.opportunity)).task] = static_cast<int>(a.opportunity);
      }
      pop.push_back(evaluate(std::move(genes), false));
    }
    // Random gene subsets, repaired and completed greedily.
    while (static_cast<int>(pop.size()) < size) {
      Genome genes(index_.task_count(), -1);
      for (int t : tasks_) {
        if (rng_.bernoulli(0.5)) {
          const auto opps = index_.task_opps(t);
          genes[t] = opps[rng_.index(opps.size())];
        }
      }
      pop.push_back(evaluate(std::move(genes), true));
    }
    return pop;
  }

  // Repairs the genome into a feasible plan, fills it greedily, scores it.
  Individual evaluate(Genome genes, bool fill) {
    plan_.clear();
    for (int t : tasks_) {
      if (genes[t] >= 0 && plan_.can_insert(genes[t])) plan_.insert(genes[t]);
    }
    if (fill) {
      std::vector<int> order = tasks_;
      rng_.shuffle(order);
      detail::greedy_fill(plan_, order);
    }
    Individual ind;
    ind.genes.assign(index_.task_count(), -1);
    for (int t = 0; t < index_.task_count(); ++t) ind.genes[t] = plan_.assigned_opp(t);
    ind.score = search_score(plan_, config_.objective);
    return ind;
  }

  double value_of(const Individual& ind) {
    detail::rebuild(plan_, opps_of(ind.genes));
    return objective_value(plan_, config_.objective);
  }

  static std::vector<int> opps_of(const Genome& g) {
    std::vector<int> out;
    for (int o : g) {
      if (o >= 0) out.push_back(o);
    }
    return out;
  }

  std::size_t tournament(const std::vector<Individual>& pop) {
    std::size_t best = rng_.index(pop.size());
    for (int i = 1; i < std::max(1, config_.ga_tournament); ++i) {
      const std::size_t c = rng_.index(pop.size());
      if (pop[c].score > pop[best].score) best = c;
    }
    return best;
  }

  Genome crossover(const Genome& a, const Genome& b) {
    Genome child = a;
    const std::size_t cut = rng_.index(a.size() + 1);
    for (std::size_t i = cut; i < a.size(); ++i) child[i] = b[i];
    return child;
  }

  void mutate(Genome& g) {
    for (int t : tasks_) {
      if (!rng_.bernoulli(config_.ga_mutation)) continue;
      if (g[t] >= 0 && rng_.bernoulli(0.5)) {
        g[t] = -1;
      } else {
        const auto opps = index_.task_opps(t);
        g[t] = opps[rng_.index(opps.size())];
      }
    }
  }

  static std::size_t best_of(const std::vector<Individual>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
      if (pop[i].score > pop[best].score) best = i;
    }
    return best;
  }

  const InstanceIndex& index_;
  const SolverConfig& config_;
  PlanState plan_;
  Rng rng_;
  std::vector<int> tasks_;
};

}  // namespace

SolveResult genetic_algorithm(const InstanceIndex& index, const SolverConfig& config,
                              const GeneticHooks& hooks) {
  if (config.ga_population < 2) throw DomainError("GA population must be at least 2");
  Genetic ga(index, config);
  return ga.run(hooks);
}

}  // namespace eosb
