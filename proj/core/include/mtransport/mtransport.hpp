// mtransport.hpp: umbrella header

#pragma once

#include "mtransport/analytic.hpp"
#include "mtransport/currents.hpp"
#include "mtransport/errors.hpp"
#include "mtransport/greens.hpp"
#include "mtransport/model.hpp"
#include "mtransport/numerics.hpp"
#include "mtransport/oracle.hpp"
#include "mtransport/scenarios.hpp"
#include "mtransport/selfconsistent.hpp"
