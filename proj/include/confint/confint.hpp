#pragma once

#include "confint/binom.hpp"
#include "confint/bootstrap.hpp"
#include "confint/coverage.hpp"
#include "confint/coverage_curve.hpp"
#include "confint/error.hpp"
#include "confint/hpd.hpp"
#include "confint/interval.hpp"
#include "confint/mean.hpp"
#include "confint/ml.hpp"
#include "confint/numerics/matrix.hpp"
#include "confint/numerics/minimize.hpp"
#include "confint/numerics/rng.hpp"
#include "confint/numerics/roots.hpp"
#include "confint/numerics/special.hpp"
#include "confint/sample.hpp"
