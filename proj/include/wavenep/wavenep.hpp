// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wavenep/alpha.hpp"
#include "wavenep/basis_tensor.hpp"
#include "wavenep/cayley.hpp"
#include "wavenep/cayley_nep.hpp"
#include "wavenep/dtn.hpp"
#include "wavenep/exterior.hpp"
#include "wavenep/fem.hpp"
#include "wavenep/geometry.hpp"
#include "wavenep/grid.hpp"
#include "wavenep/iar.hpp"
#include "wavenep/polynomial_nep.hpp"
#include "wavenep/problem.hpp"
#include "wavenep/ritz.hpp"
#include "wavenep/tiar.hpp"
#include "wavenep/types.hpp"
#include "wavenep/waveguide_system.hpp"
#include "wavenep/wtiar.hpp"
