#pragma once

#include "angular.hpp"
#include "arrangement.hpp"
#include "config.hpp"
#include "depth_colourful.hpp"
#include "depth_mono.hpp"
#include "generate.hpp"
#include "io.hpp"
#include "median_sweep.hpp"
#include "metrics.hpp"
#include "oracle.hpp"
#include "perturb.hpp"
#include "point.hpp"
#include "scalar.hpp"
#include "svg.hpp"
