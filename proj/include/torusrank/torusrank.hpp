#pragma once

// Umbrella header.

#include "torusrank/bratteli.hpp"
#include "torusrank/cache.hpp"
#include "torusrank/cf_expansion.hpp"
#include "torusrank/complexity.hpp"
#include "torusrank/convergents.hpp"
#include "torusrank/errors.hpp"
#include "torusrank/euler_system.hpp"
#include "torusrank/integers.hpp"
#include "torusrank/polynomial.hpp"
#include "torusrank/quadratic_irrational.hpp"
#include "torusrank/rank_bridge.hpp"
#include "torusrank/serialize.hpp"
