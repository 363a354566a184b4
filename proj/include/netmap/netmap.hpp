#pragma once

// Umbrella header.

#include "netmap/exactnum.hpp"
#include "netmap/contfrac.hpp"
#include "netmap/lattice.hpp"
#include "netmap/diagram.hpp"
#include "netmap/photon.hpp"
#include "netmap/portrait.hpp"
#include "netmap/intervals.hpp"
#include "netmap/decider.hpp"
#include "netmap/dnfamily.hpp"
