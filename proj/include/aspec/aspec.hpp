#pragma once

#include "aspec/error.hpp"
#include "aspec/rational.hpp"
#include "aspec/mistake.hpp"
#include "aspec/points.hpp"
#include "aspec/systems.hpp"
#include "aspec/metrics.hpp"
#include "aspec/max_clique.hpp"
#include "aspec/separation.hpp"
#include "aspec/tracing.hpp"
#include "aspec/theorems.hpp"
#include "aspec/system_io.hpp"
#include "aspec/cli.hpp"
