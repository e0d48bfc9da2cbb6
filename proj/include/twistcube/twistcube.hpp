#pragma once

#include "twistcube/graph.hpp"
#include "twistcube/label.hpp"
#include "twistcube/math_util.hpp"
#include "twistcube/metrics.hpp"
#include "twistcube/routing.hpp"
#include "twistcube/serialize.hpp"
#include "twistcube/sweep.hpp"
#include "twistcube/verify.hpp"
