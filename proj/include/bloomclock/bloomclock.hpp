#pragma once

#include "bloomclock/bloom_clock.hpp"
#include "bloomclock/codec.hpp"
#include "bloomclock/errors.hpp"
#include "bloomclock/hashing.hpp"
#include "bloomclock/history.hpp"
#include "bloomclock/simulator.hpp"
#include "bloomclock/vector_clock.hpp"
#include "bloomclock/verdict.hpp"
