#pragma once

#include <icic/analysis.hpp>
#include <icic/distributed.hpp>
#include <icic/error.hpp>
#include <icic/exhaustive.hpp>
#include <icic/experiments.hpp>
#include <icic/graph.hpp>
#include <icic/hungarian.hpp>
#include <icic/io.hpp>
#include <icic/matching.hpp>
#include <icic/metrics.hpp>
#include <icic/model.hpp>
#include <icic/random.hpp>
#include <icic/report.hpp>
#include <icic/scenario_gen.hpp>
