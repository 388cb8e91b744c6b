#pragma once

// Umbrella header for the trigfun library.

#include "trigfun/approx.hpp"
#include "trigfun/calculus.hpp"
#include "trigfun/coeff_io.hpp"
#include "trigfun/constructor.hpp"
#include "trigfun/dual.hpp"
#include "trigfun/error.hpp"
#include "trigfun/expr.hpp"
#include "trigfun/interval.hpp"
#include "trigfun/ode.hpp"
#include "trigfun/problem_file.hpp"
#include "trigfun/trigpoly.hpp"
