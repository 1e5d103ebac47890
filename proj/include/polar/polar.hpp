/*
Umbrella header.
*/

#pragma once

#include "polar/bits.hpp"
#include "polar/channel.hpp"
#include "polar/code_params.hpp"
#include "polar/encode.hpp"
#include "polar/errors.hpp"
#include "polar/kronecker.hpp"
#include "polar/partial_sum.hpp"
#include "polar/psu.hpp"
#include "polar/row_stream.hpp"
#include "polar/sc_decoder.hpp"
#include "polar/simulation.hpp"
#include "polar/verification.hpp"
