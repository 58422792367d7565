#pragma once

#include "spingas/cm.hpp"
#include "spingas/colsim.hpp"
#include "spingas/compare.hpp"
#include "spingas/csv.hpp"
#include "spingas/ldl.hpp"
#include "spingas/liouville.hpp"
#include "spingas/model.hpp"
#include "spingas/potential.hpp"
#include "spingas/quadrature.hpp"
#include "spingas/rng.hpp"
#include "spingas/types.hpp"
#include "spingas/units.hpp"
