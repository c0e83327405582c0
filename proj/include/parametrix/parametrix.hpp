#pragma once

// Symbolic-numeric construction of asymptotic parametrices, fundamental
// solutions and separable Green's-function kernels for type-A degenerate
// elliptic operators on stretched cones.

#include "parametrix/bigfloat.hpp"
#include "parametrix/io.hpp"
#include "parametrix/kernel.hpp"
#include "parametrix/operators.hpp"
#include "parametrix/parampoly.hpp"
#include "parametrix/poly.hpp"
#include "parametrix/quadext.hpp"
#include "parametrix/rational.hpp"
#include "parametrix/reference.hpp"
#include "parametrix/special.hpp"
#include "parametrix/spectrum.hpp"
#include "parametrix/symbols.hpp"
#include "parametrix/verify.hpp"
#include "parametrix/words.hpp"
