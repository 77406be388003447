#pragma once

#include "heatcircle/binomial.hpp"
#include "heatcircle/circle_grid.hpp"
#include "heatcircle/csv.hpp"
#include "heatcircle/errors.hpp"
#include "heatcircle/grid_io.hpp"
#include "heatcircle/heat_explicit.hpp"
#include "heatcircle/local_clt.hpp"
#include "heatcircle/markov_chain.hpp"
#include "heatcircle/martingale.hpp"
#include "heatcircle/rng.hpp"
#include "heatcircle/spectral.hpp"
#include "heatcircle/walk_model.hpp"
