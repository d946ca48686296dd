#pragma once

#include "vanetsim/config.hpp"
#include "vanetsim/config_io.hpp"
#include "vanetsim/csv.hpp"
#include "vanetsim/engine.hpp"
#include "vanetsim/linkmodel.hpp"
#include "vanetsim/macmodel.hpp"
#include "vanetsim/mobility.hpp"
#include "vanetsim/routing.hpp"
#include "vanetsim/sweep.hpp"
#include "vanetsim/topology.hpp"
#include "vanetsim/vehicle.hpp"
