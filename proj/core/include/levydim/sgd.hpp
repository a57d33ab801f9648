// Minibatch SGD with full iterate recording.
#pragma once

#include <span>
#include <vector>

#include "levydim/dataset.hpp"
#include "levydim/objective.hpp"
#include "levydim/rng.hpp"
#include "levydim/trajectory.hpp"

namespace levydim {

// Runs w_{k+1} = w_k - eta * (1/batch) * sum_{i in batch_k} grad f^{(i)}(w_k)
// for floor(n / batch) steps per epoch and records every iterate (w_0 at
// t = 0, then one point per step at t = k * eta).
//
// Minibatch indices are drawn uniformly without replacement per step, from
// the index range alone: the draw depends only on (n, batch, rng), never on
// feature or label values.  `index_log`, when non-null, receives the chosen
// indices in draw order (batch per step) so tests can assert exactly that.
//
// `w0` empty starts at the origin; otherwise its size must match the
// objective's parameter dimension.  Throws std::runtime_error if an iterate
// becomes non-finite.
Trajectory run_sgd(const Objective& loss, const Dataset& data, double eta, int batch,
                   int epochs, RngStream& rng, std::span<const double> w0 = {},
                   std::vector<std::size_t>* index_log = nullptr);

} // namespace levydim
