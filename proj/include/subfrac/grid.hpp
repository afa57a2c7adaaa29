#pragma once
// Time grids and sampled paths.

#include <cstddef>
#include <sstream>
#include <vector>

#include "subfrac/errors.hpp"

namespace subfrac {

// Node set for path simulation: nodes[0] == 0, strictly increasing,
// nodes.back() == t_max, nodes.size() == n_steps + 1.
struct TimeGrid {
  double t_max = 0.0;
  std::size_t n_steps = 0;
  std::vector<double> nodes;

  static TimeGrid uniform(double t_max, std::size_t n_steps) {
    if (!(t_max > 0.0)) throw parameter_error("TimeGrid: t_max must be positive");
    if (n_steps < 1) throw parameter_error("TimeGrid: need at least one step");
    TimeGrid g;
    g.t_max = t_max;
    g.n_steps = n_steps;
    g.nodes.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i)
      g.nodes[i] = t_max * static_cast<double>(i) / static_cast<double>(n_steps);
    return g;
  }

  void validate() const {
    if (nodes.size() != n_steps + 1)
      throw parameter_error("TimeGrid: nodes.size() must equal n_steps + 1");
    if (nodes.empty() || nodes.front() != 0.0)
      throw parameter_error("TimeGrid: first node must be 0");
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (!(nodes[i] > nodes[i - 1])) {
        std::ostringstream msg;
        msg << "TimeGrid: nodes must be strictly increasing (violated at index " << i << ")";
        throw parameter_error(msg.str());
      }
    }
    if (nodes.back() != t_max)
      throw parameter_error("TimeGrid: last node must equal t_max");
  }
};

// One realization sampled on a grid; values[i] is the process at nodes[i].
struct SamplePath {
  TimeGrid grid;
  std::vector<double> values;

  void validate() const {
    grid.validate();
    if (values.size() != grid.nodes.size())
      throw parameter_error("SamplePath: values.size() must match the grid");
  }
};

}  // namespace subfrac
