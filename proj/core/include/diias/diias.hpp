#pragma once

#include "diias/asymptotic.hpp"
#include "diias/centre_chord.hpp"
#include "diias/error.hpp"
#include "diias/export.hpp"
#include "diias/grid.hpp"
#include "diias/io.hpp"
#include "diias/patches.hpp"
#include "diias/polyline.hpp"
#include "diias/report.hpp"
#include "diias/ruled.hpp"
#include "diias/singularity.hpp"
#include "diias/tolerance.hpp"
#include "diias/vec.hpp"
