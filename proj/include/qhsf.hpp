#pragma once

/**
 * @file qhsf.hpp
 * @brief Umbrella header: quaternionic Heisenberg group, spherical functions, spherical
 *        transform, spectral multipliers and the acceptance suites.
 */

#include "qhsf/errors.hpp"
#include "qhsf/quaternion.hpp"
#include "qhsf/group.hpp"
#include "qhsf/quadrature.hpp"
#include "qhsf/laguerre.hpp"
#include "qhsf/radial_function.hpp"
#include "qhsf/spherical.hpp"
#include "qhsf/fock.hpp"
#include "qhsf/spectral_grid.hpp"
#include "qhsf/transform.hpp"
#include "qhsf/littlewood_paley.hpp"
#include "qhsf/symbols.hpp"
#include "qhsf/hormander.hpp"
#include "qhsf/sublaplacian.hpp"
#include "qhsf/kernel.hpp"
#include "qhsf/multiplier.hpp"
#include "qhsf/registry.hpp"
#include "qhsf/config.hpp"
#include "qhsf/report.hpp"
#include "qhsf/suites.hpp"
#include "qhsf/cli.hpp"
