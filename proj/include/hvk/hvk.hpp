#pragma once

#include "hvk/errors.hpp"
#include "hvk/exact.hpp"
#include "hvk/lie_core.hpp"
#include "hvk/coefficients.hpp"
#include "hvk/quadrature.hpp"
#include "hvk/ode.hpp"
#include "hvk/hyperbolic.hpp"
#include "hvk/poincare_series.hpp"
#include "hvk/holonomy_lab.hpp"
#include "hvk/variance_lab.hpp"
#include "hvk/crossratio_lab.hpp"
#include "hvk/report.hpp"
#include "hvk/suite.hpp"
