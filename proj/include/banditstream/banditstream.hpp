#pragma once

#include "banditstream/algorithms/registry.hpp"
#include "banditstream/environment.hpp"
#include "banditstream/errors.hpp"
#include "banditstream/harness/aggregate.hpp"
#include "banditstream/harness/config.hpp"
#include "banditstream/harness/oracle.hpp"
#include "banditstream/harness/results_io.hpp"
#include "banditstream/harness/runner.hpp"
#include "banditstream/harness/verify.hpp"
#include "banditstream/instances.hpp"
#include "banditstream/params.hpp"
#include "banditstream/stats.hpp"
