#pragma once

#include "afflats/error.hpp"
#include "afflats/gf.hpp"
#include "afflats/linalg.hpp"
#include "afflats/affine.hpp"
#include "afflats/counting.hpp"
#include "afflats/families.hpp"
#include "afflats/verify.hpp"
