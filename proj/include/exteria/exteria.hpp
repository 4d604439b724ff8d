// Umbrella header.
#pragma once

#include "exteria/scalar.hpp"
#include "exteria/combinations.hpp"
#include "exteria/matrix.hpp"
#include "exteria/exterior.hpp"
#include "exteria/shapes.hpp"
#include "exteria/orbits.hpp"
#include "exteria/polynomial.hpp"
#include "exteria/relations.hpp"
#include "exteria/localization.hpp"
#include "exteria/tangent.hpp"
#include "exteria/parallel.hpp"
#include "exteria/json_io.hpp"
