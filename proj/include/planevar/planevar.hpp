#pragma once

// Everything except io.hpp, which additionally needs the JSON header.

#include "planevar/core.hpp"
#include "planevar/geom.hpp"
#include "planevar/sampled.hpp"
#include "planevar/vf.hpp"
#include "planevar/variation.hpp"
#include "planevar/onedim.hpp"
#include "planevar/ctpp.hpp"
#include "planevar/approx.hpp"
#include "planevar/joins.hpp"
#include "planevar/svg.hpp"
