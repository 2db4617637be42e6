#pragma once

#include "exg/anova.hpp"
#include "exg/distribution.hpp"
#include "exg/error.hpp"
#include "exg/estimation.hpp"
#include "exg/gof.hpp"
#include "exg/histogram.hpp"
#include "exg/params.hpp"
#include "exg/polyfit.hpp"
#include "exg/quadrature.hpp"
#include "exg/rng.hpp"
#include "exg/roots.hpp"
#include "exg/sample.hpp"
#include "exg/special.hpp"
#include "exg/stats.hpp"
