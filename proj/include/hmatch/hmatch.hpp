#pragma once

// Umbrella header for the whole library.

#include "hmatch/algorithms.hpp"
#include "hmatch/core.hpp"
#include "hmatch/error.hpp"
#include "hmatch/experiment.hpp"
#include "hmatch/feasibility.hpp"
#include "hmatch/generator.hpp"
#include "hmatch/io.hpp"
#include "hmatch/metrics.hpp"
#include "hmatch/properties.hpp"
#include "hmatch/rng.hpp"
