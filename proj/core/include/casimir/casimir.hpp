#pragma once

#include "casimir/error.hpp"
#include "casimir/forces.hpp"
#include "casimir/medium.hpp"
#include "casimir/propagators.hpp"
#include "casimir/quadrature.hpp"
