#ifndef SUBDUAL_SUBDUAL_HPP
#define SUBDUAL_SUBDUAL_HPP

// Umbrella header for the whole library.

#include "subdual/autodiff.hpp"
#include "subdual/bnn.hpp"
#include "subdual/dualcheck.hpp"
#include "subdual/dualfit.hpp"
#include "subdual/errors.hpp"
#include "subdual/io.hpp"
#include "subdual/model.hpp"
#include "subdual/nice.hpp"
#include "subdual/pwl.hpp"
#include "subdual/ralphs.hpp"
#include "subdual/rational.hpp"
#include "subdual/rng.hpp"
#include "subdual/simplex.hpp"
#include "subdual/solve.hpp"

#endif // SUBDUAL_SUBDUAL_HPP
