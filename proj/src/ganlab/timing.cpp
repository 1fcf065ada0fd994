#include "cg/ganlab.hpp"

namespace cg {

std::vector<TimingRow> timing_compare(const std::vector<TrainConfig>& cfgs, std::size_t iterations) {
  if (cfgs.empty()) return {};
  for (const TrainConfig& c : cfgs)
    if (!(c.nets == cfgs.front().nets) || c.batch_size != cfgs.front().batch_size)
      throw PreconditionError("timing_compare: configs must share network specs and batch size");

  // Round-robin, one step per run, so every method sees the same machine conditions.
  std::vector<Trainer> trainers;
  trainers.reserve(cfgs.size());
  for (TrainConfig c : cfgs) {
    c.iterations = iterations;
    c.checkpoint_steps.clear();
    trainers.emplace_back(c);
  }
  for (bool running = true; running;) {
    running = false;
    for (Trainer& t : trainers) running = t.step() || running;
  }

  std::vector<TimingRow> rows;
  for (std::size_t i = 0; i < trainers.size(); ++i) {
    const TrainResult r = trainers[i].finish();
    const std::string label = method_label(cfgs[i].optimizer);
    if (r.failed)
      throw NumericalError("timing_compare: " + label + " failed at step " + std::to_string(r.failed_step) + ": " +
                           r.failure);
    rows.push_back({label, r.timing});
  }
  return rows;
}

}  // namespace cg
