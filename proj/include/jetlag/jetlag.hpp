#pragma once

#include "jetlag/error.hpp"
#include "jetlag/expr/parser.hpp"
#include "jetlag/expr/scalar_field.hpp"
#include "jetlag/dtensor/covariant.hpp"
#include "jetlag/dtensor/gauge.hpp"
#include "jetlag/dtensor/json.hpp"
#include "jetlag/geometry/curvature.hpp"
#include "jetlag/geometry/transform.hpp"
#include "jetlag/fields/deflection.hpp"
#include "jetlag/fields/einstein.hpp"
#include "jetlag/fields/maxwell.hpp"
#include "jetlag/dynamics/harmonic.hpp"
