#pragma once

#include "smq/counter_rng.hpp"
#include "smq/field.hpp"
#include "smq/grid.hpp"
#include "smq/identities.hpp"
#include "smq/kinematics.hpp"
#include "smq/lambda_distribution.hpp"
#include "smq/model_state.hpp"
#include "smq/montecarlo.hpp"
#include "smq/numerics.hpp"
#include "smq/report.hpp"
#include "smq/states.hpp"
#include "smq/uncertainty.hpp"
#include "smq/velocity_distribution.hpp"
