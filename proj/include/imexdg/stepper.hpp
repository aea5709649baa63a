#pragma once

#include <array>
#include <vector>

#include "imexdg/space.hpp"
#include "imexdg/stage_solver.hpp"
#include "imexdg/tableau.hpp"
#include "imexdg/tendencies.hpp"
#include "imexdg/thermo.hpp"

namespace imexdg {

struct StepperOptions {
  PicardConfig picard{};
  /// false disables the stiff part entirely (S = 0, no stage solves); the
  /// scheme then reduces to the explicit tableau.
  bool implicit = true;
};

/// Stage states and the cached split tendencies, filled during a step.
struct StageHistory {
  std::vector<ConservedField> states;
  std::vector<PrimitiveField> primitives;
  std::vector<Tendency> nonstiff;
  std::vector<Tendency> stiff;

  void clear();
  int completed() const { return static_cast<int>(states.size()); }
};

struct StepStats {
  std::array<int, 3> picard{};  ///< per stage, 0 for stage 1
  std::array<int, 3> gmres{};   ///< summed over Picard iterations
  std::array<double, 3> variation{};
};

class ImexStepper {
 public:
  ImexStepper(const DgSpace& space, const GasConstants& gas, StepperOptions opts = {});

  /// Advances q^n by dt. Throws StageSolveError or InvalidStateError.
  ConservedField step(const ConservedField& qn, double dt);

  const StageHistory& history() const { return history_; }
  const StepStats& last_stats() const { return stats_; }
  long implicit_solves() const { return implicit_solves_; }
  const StepperOptions& options() const { return opts_; }
  const GasConstants& gas() const { return gas_; }

 private:
  const DgSpace* space_;
  GasConstants gas_;
  StepperOptions opts_;
  ButcherPair tab_;
  StageHistory history_;
  StepStats stats_;
  long implicit_solves_ = 0;
};

/// Stage context of stage l (1-based) for the given tableau.
StageContext make_stage_context(const ButcherPair& tab, int stage, double dt,
                                const GasConstants& gas);

/// q^{n+1} from the b-weighted sum of cached NS and S evaluations.
ConservedField final_update(const DgSpace& sp, const ConservedField& qn,
                            const StageHistory& history, double dt, const ButcherPair& tab);

/// The implicit contribution dt sum_l b_l S_l recovered from stage 3 alone:
/// M q^{(3)} - M q^n - dt sum_m a_3m NS_m. Weak form, per conserved variable.
Tendency implicit_reconstruction(const DgSpace& sp, const ConservedField& qn,
                                 const StageHistory& history, double dt, const ButcherPair& tab);

/// The same contribution computed directly as dt sum_l b_l S_l.
Tendency implicit_contribution(const DgSpace& sp, const StageHistory& history, double dt,
                               const ButcherPair& tab);

}  // namespace imexdg
