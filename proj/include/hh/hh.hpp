#pragma once

// Umbrella header for the hhbounds library.

#include "hh/bound_report.hpp"
#include "hh/chebyshev.hpp"
#include "hh/classic.hpp"
#include "hh/config.hpp"
#include "hh/error_model.hpp"
#include "hh/errors.hpp"
#include "hh/function.hpp"
#include "hh/generate.hpp"
#include "hh/interval.hpp"
#include "hh/lower.hpp"
#include "hh/mean_system.hpp"
#include "hh/measure.hpp"
#include "hh/quadrature.hpp"
#include "hh/residual.hpp"
#include "hh/suite.hpp"
#include "hh/upper.hpp"
