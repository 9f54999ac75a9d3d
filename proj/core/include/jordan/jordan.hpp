#pragma once

#include "jordan/algebra.hpp"
#include "jordan/calculus.hpp"
#include "jordan/descriptor.hpp"
#include "jordan/errors.hpp"
#include "jordan/functionals.hpp"
#include "jordan/random.hpp"
#include "jordan/spectral.hpp"
#include "jordan/trotter.hpp"
