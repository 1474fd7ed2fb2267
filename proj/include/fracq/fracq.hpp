#pragma once

#include "fracq/analytics.hpp"
#include "fracq/cf.hpp"
#include "fracq/core.hpp"
#include "fracq/eigen.hpp"
#include "fracq/fft.hpp"
#include "fracq/io.hpp"
#include "fracq/quantize.hpp"
#include "fracq/rng.hpp"
#include "fracq/synthesis.hpp"
#include "fracq/version.hpp"
#include "fracq/weights.hpp"
