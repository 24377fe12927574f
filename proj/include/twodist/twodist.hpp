#pragma once

#include "twodist/canonical.hpp"
#include "twodist/census.hpp"
#include "twodist/enumerate.hpp"
#include "twodist/exact.hpp"
#include "twodist/graph.hpp"
#include "twodist/graph6.hpp"
#include "twodist/linalg.hpp"
#include "twodist/montecarlo.hpp"
#include "twodist/random.hpp"
#include "twodist/realize.hpp"
#include "twodist/report_json.hpp"
#include "twodist/spherical.hpp"
