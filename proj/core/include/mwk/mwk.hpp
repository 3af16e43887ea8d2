#pragma once

#include "mwk/data.hpp"
#include "mwk/engine.hpp"
#include "mwk/error.hpp"
#include "mwk/geometry.hpp"
#include "mwk/matrix.hpp"
#include "mwk/rng.hpp"
#include "mwk/theory.hpp"
#include "mwk/types.hpp"
#include "mwk/weighting.hpp"
