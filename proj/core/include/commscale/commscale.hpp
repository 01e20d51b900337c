#pragma once

#include "commscale/analytic.hpp"
#include "commscale/config_io.hpp"
#include "commscale/cost_model.hpp"
#include "commscale/errors.hpp"
#include "commscale/format.hpp"
#include "commscale/projector.hpp"
#include "commscale/reference_fixture.hpp"
#include "commscale/report.hpp"
#include "commscale/sweep.hpp"
#include "commscale/types.hpp"
#include "commscale/zoo.hpp"
