#pragma once

// Umbrella header: pulls in the whole library.

#include "qsc/errors.hpp"
#include "qsc/random.hpp"
#include "qsc/matrix.hpp"
#include "qsc/linalg.hpp"
#include "qsc/states.hpp"
#include "qsc/povm.hpp"
#include "qsc/ledger.hpp"
#include "qsc/measurement.hpp"
#include "qsc/swap_test.hpp"
#include "qsc/reductions.hpp"
#include "qsc/bounds.hpp"
#include "qsc/generators.hpp"
#include "qsc/io.hpp"
#include "qsc/experiment.hpp"
