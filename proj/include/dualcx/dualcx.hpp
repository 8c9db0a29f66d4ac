#pragma once

#include "dualcx/errors.hpp"
#include "dualcx/complex.hpp"
#include "dualcx/integer_matrix.hpp"
#include "dualcx/smith.hpp"
#include "dualcx/homology.hpp"
#include "dualcx/pseudo_manifold.hpp"
#include "dualcx/group_action.hpp"
#include "dualcx/double_cover.hpp"
#include "dualcx/constructors.hpp"
#include "dualcx/coefficients.hpp"
#include "dualcx/json_io.hpp"
