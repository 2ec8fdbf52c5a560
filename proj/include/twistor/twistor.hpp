#pragma once

#include "twistor/calculus.hpp"
#include "twistor/coloring.hpp"
#include "twistor/cycles.hpp"
#include "twistor/dual.hpp"
#include "twistor/generators.hpp"
#include "twistor/graph.hpp"
#include "twistor/holomorphy.hpp"
#include "twistor/isomorphism.hpp"
#include "twistor/json_io.hpp"
#include "twistor/linegraph.hpp"
#include "twistor/scalar.hpp"
#include "twistor/solver.hpp"
#include "twistor/spinor.hpp"
