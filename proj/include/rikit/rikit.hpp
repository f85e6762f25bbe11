#pragma once

#include "rikit/core.hpp"
#include "rikit/grid_fn.hpp"
#include "rikit/rearrange.hpp"
#include "rikit/quadrature.hpp"
#include "rikit/fundamental.hpp"
#include "rikit/spaces.hpp"
#include "rikit/mms.hpp"
#include "rikit/maximal.hpp"
#include "rikit/indices.hpp"
#include "rikit/criteria.hpp"
#include "rikit/curves.hpp"
#include "rikit/convex.hpp"
#include "rikit/metric.hpp"
#include "rikit/regularize.hpp"
#include "rikit/io.hpp"
#include "rikit/presets.hpp"
