#pragma once

// Umbrella header for the federated label-mixture regularization simulator.

#include "flr/config.hpp"
#include "flr/data.hpp"
#include "flr/errors.hpp"
#include "flr/experiment.hpp"
#include "flr/federation.hpp"
#include "flr/io.hpp"
#include "flr/metrics.hpp"
#include "flr/model.hpp"
#include "flr/prob.hpp"
#include "flr/pseudo_label.hpp"
#include "flr/rng.hpp"
#include "flr/version.hpp"
