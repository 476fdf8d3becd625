#pragma once

// Umbrella header for the wireless secret-sharing game library.

#include "wss/analysis.hpp"
#include "wss/channel.hpp"
#include "wss/error.hpp"
#include "wss/game.hpp"
#include "wss/linalg.hpp"
#include "wss/numeric.hpp"
#include "wss/rng.hpp"
#include "wss/sim.hpp"
#include "wss/solver.hpp"
