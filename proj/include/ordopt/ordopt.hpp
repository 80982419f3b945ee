#pragma once

#include "ordopt/approx.hpp"
#include "ordopt/bounds.hpp"
#include "ordopt/errors.hpp"
#include "ordopt/exact.hpp"
#include "ordopt/gaussfn.hpp"
#include "ordopt/mc.hpp"
#include "ordopt/model.hpp"
#include "ordopt/mvncdf.hpp"
#include "ordopt/orderstats.hpp"
#include "ordopt/planner.hpp"
#include "ordopt/quadrature.hpp"
#include "ordopt/rng.hpp"
#include "ordopt/types.hpp"
