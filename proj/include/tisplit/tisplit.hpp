#pragma once

// Umbrella header.

#include "tisplit/checks.hpp"
#include "tisplit/decomposition.hpp"
#include "tisplit/ensemble.hpp"
#include "tisplit/errors.hpp"
#include "tisplit/linalg.hpp"
#include "tisplit/matrix_io.hpp"
#include "tisplit/report_io.hpp"
#include "tisplit/spectral_shift.hpp"
#include "tisplit/suite.hpp"
#include "tisplit/tolerances.hpp"
#include "tisplit/variant.hpp"
