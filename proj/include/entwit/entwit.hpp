#pragma once

// Umbrella include for the whole library.

#include "complexmat.hpp"
#include "experiments.hpp"
#include "hermitian.hpp"
#include "hybrid23.hpp"
#include "matrix_json.hpp"
#include "observables.hpp"
#include "rng.hpp"
#include "sdp.hpp"
#include "states.hpp"
#include "tomography.hpp"
#include "witness.hpp"
