#pragma once

// Umbrella header.
#include "scpa/colorspace.hpp"
#include "scpa/dvr.hpp"
#include "scpa/error.hpp"
#include "scpa/image.hpp"
#include "scpa/median.hpp"
#include "scpa/median_bench.hpp"
#include "scpa/noise.hpp"
#include "scpa/pixel_io.hpp"
#include "scpa/scpa_sim.hpp"
#include "scpa/synth.hpp"
#include "scpa/task_table.hpp"
