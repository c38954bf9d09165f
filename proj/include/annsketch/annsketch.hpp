#pragma once

#include "annsketch/capacity.hpp"
#include "annsketch/error.hpp"
#include "annsketch/grover.hpp"
#include "annsketch/hamming.hpp"
#include "annsketch/hard_instance.hpp"
#include "annsketch/qrac.hpp"
#include "annsketch/quantum_state.hpp"
#include "annsketch/rng.hpp"
