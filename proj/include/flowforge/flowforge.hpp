#pragma once

#include "flowforge/errors.hpp"
#include "flowforge/group.hpp"
#include "flowforge/rational.hpp"
#include "flowforge/multigraph.hpp"
#include "flowforge/flow_algebra.hpp"
#include "flowforge/ears.hpp"
#include "flowforge/solver.hpp"
#include "flowforge/bounds.hpp"
#include "flowforge/generators.hpp"
#include "flowforge/reduction.hpp"
#include "flowforge/io.hpp"
