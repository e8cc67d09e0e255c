/// Umbrella header.
#pragma once

#include "densop/rational.hpp"
#include "densop/polynomial.hpp"
#include "densop/multi_index.hpp"
#include "densop/linalg.hpp"
#include "densop/density.hpp"
#include "densop/diff_map.hpp"
#include "densop/operator.hpp"
#include "densop/action.hpp"
#include "densop/symbol.hpp"
#include "densop/equivariance.hpp"
#include "densop/classify.hpp"
#include "densop/json_io.hpp"
#include "densop/sampling.hpp"
#include "densop/verify.hpp"
