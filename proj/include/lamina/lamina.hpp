#pragma once

#include "lamina/feasibility.hpp"
#include "lamina/json_io.hpp"
#include "lamina/measure.hpp"
#include "lamina/stree.hpp"
#include "lamina/svalue.hpp"
#include "lamina/svector.hpp"
#include "lamina/train_track.hpp"
#include "lamina/xrat.hpp"
