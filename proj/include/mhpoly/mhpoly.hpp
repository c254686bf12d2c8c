#pragma once

#include "catalog.hpp"
#include "certificate.hpp"
#include "graded_algebra.hpp"
#include "linalg.hpp"
#include "minmodel.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "recheck.hpp"
#include "verify.hpp"
