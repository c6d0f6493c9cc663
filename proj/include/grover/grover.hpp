// grover.hpp
// Umbrella header for the Grover search simulators.

#pragma once

#include "grover/compressed.hpp"
#include "grover/core.hpp"
#include "grover/dense.hpp"
#include "grover/io.hpp"
#include "grover/matrixfree.hpp"
#include "grover/run.hpp"
#include "grover/termination.hpp"
#include "grover/validate.hpp"
