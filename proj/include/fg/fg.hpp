#pragma once

// Umbrella header for the whole library.

#include "fg/words.hpp"
#include "fg/rng.hpp"
#include "fg/profile.hpp"
#include "fg/automorphisms.hpp"
#include "fg/subwords.hpp"
#include "fg/stallings.hpp"
#include "fg/whitehead.hpp"
#include "fg/sampling.hpp"
#include "fg/certifier.hpp"
#include "fg/sharpness.hpp"
#include "fg/experiment.hpp"
