#pragma once

#include "fram/chord.hpp"
#include "fram/cli.hpp"
#include "fram/errors.hpp"
#include "fram/graph.hpp"
#include "fram/json_io.hpp"
#include "fram/majority.hpp"
#include "fram/model.hpp"
#include "fram/reports.hpp"
#include "fram/scenario.hpp"
#include "fram/variability.hpp"
