// Umbrella header.
#pragma once

#include "beamplan/coverage.hpp"
#include "beamplan/geometry.hpp"
#include "beamplan/mobility.hpp"
#include "beamplan/montecarlo.hpp"
#include "beamplan/optimizer.hpp"
#include "beamplan/quadrature.hpp"
#include "beamplan/random.hpp"
#include "beamplan/reproduce.hpp"
#include "beamplan/scenario.hpp"
#include "beamplan/scenario_io.hpp"
#include "beamplan/sweep.hpp"
#include "beamplan/units.hpp"
#include "beamplan/validate.hpp"
