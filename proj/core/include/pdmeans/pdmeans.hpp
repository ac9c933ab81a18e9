#pragma once

#include "pdmeans/divergences.hpp"
#include "pdmeans/error.hpp"
#include "pdmeans/linalg.hpp"
#include "pdmeans/matrix_io.hpp"
#include "pdmeans/means.hpp"
#include "pdmeans/random.hpp"
#include "pdmeans/right_mean.hpp"
#include "pdmeans/solver.hpp"
#include "pdmeans/structure.hpp"
#include "pdmeans/verify.hpp"
#include "pdmeans/wasserstein.hpp"
