#pragma once

#include "angle_forge/angles.hpp"
#include "angle_forge/census.hpp"
#include "angle_forge/config.hpp"
#include "angle_forge/configurations.hpp"
#include "angle_forge/convexity.hpp"
#include "angle_forge/curves.hpp"
#include "angle_forge/errors.hpp"
#include "angle_forge/geometry.hpp"
#include "angle_forge/incidence.hpp"
#include "angle_forge/io.hpp"
#include "angle_forge/order_graph.hpp"
#include "angle_forge/poly.hpp"
#include "angle_forge/predicates.hpp"
#include "angle_forge/rational.hpp"
#include "angle_forge/report.hpp"
