#pragma once

// Umbrella header: exact nonlocality-versus-entanglement toolkit for
// N-qubit GHZ states under independent depolarizing or phase-damping noise.

#include "ghznl/bell.hpp"
#include "ghznl/ccp.hpp"
#include "ghznl/combinatorics.hpp"
#include "ghznl/dense.hpp"
#include "ghznl/entanglement.hpp"
#include "ghznl/jacobi.hpp"
#include "ghznl/nonlocal_content.hpp"
#include "ghznl/rng.hpp"
#include "ghznl/state.hpp"
