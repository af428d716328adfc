#pragma once

// Umbrella header.

#include "zipfmix/corpus.hpp"
#include "zipfmix/distributions.hpp"
#include "zipfmix/errors.hpp"
#include "zipfmix/freq_table.hpp"
#include "zipfmix/gof.hpp"
#include "zipfmix/inference.hpp"
#include "zipfmix/mixtures.hpp"
#include "zipfmix/quadrature.hpp"
#include "zipfmix/random.hpp"
#include "zipfmix/specfun.hpp"
