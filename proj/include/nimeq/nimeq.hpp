#ifndef NIMEQ_NIMEQ_HPP
#define NIMEQ_NIMEQ_HPP

// Umbrella header: behavioral-equivalence laboratory for nature-inspired
// metaheuristics. Run two optimizers from one seed, record what they do,
// tune one to imitate the other, and measure how close they get.

#include "nimeq/classifiers.hpp"
#include "nimeq/cli_protocol.hpp"
#include "nimeq/descriptors.hpp"
#include "nimeq/fv_io.hpp"
#include "nimeq/harness.hpp"
#include "nimeq/matrix.hpp"
#include "nimeq/metade.hpp"
#include "nimeq/optimizers.hpp"
#include "nimeq/params.hpp"
#include "nimeq/problem.hpp"
#include "nimeq/rng.hpp"
#include "nimeq/similarity.hpp"

#endif
