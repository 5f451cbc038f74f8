#pragma once

#include "dualslope/coverage.hpp"
#include "dualslope/error.hpp"
#include "dualslope/mcsim.hpp"
#include "dualslope/model.hpp"
#include "dualslope/quadrature.hpp"
#include "dualslope/rng.hpp"
#include "dualslope/specfun.hpp"
#include "dualslope/throughput.hpp"
