#pragma once

#include "effect_order/automorphisms.hpp"
#include "effect_order/equal_pointwise.hpp"
#include "effect_order/errors.hpp"
#include "effect_order/hermitian.hpp"
#include "effect_order/interval_maps.hpp"
#include "effect_order/json_io.hpp"
#include "effect_order/moebius.hpp"
#include "effect_order/operators.hpp"
#include "effect_order/sampling.hpp"
#include "effect_order/tolerances.hpp"
#include "effect_order/verify.hpp"
