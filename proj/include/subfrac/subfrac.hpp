#pragma once
// Umbrella header.

#include "subfrac/density.hpp"
#include "subfrac/errors.hpp"
#include "subfrac/grid.hpp"
#include "subfrac/parallel.hpp"
#include "subfrac/quadrature.hpp"
#include "subfrac/report.hpp"
#include "subfrac/rng.hpp"
#include "subfrac/sampling.hpp"
#include "subfrac/semigroup.hpp"
#include "subfrac/solver.hpp"
#include "subfrac/verify.hpp"
#include "subfrac/version.hpp"
