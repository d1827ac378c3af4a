#pragma once

#include "lstn/baseline.hpp"
#include "lstn/bench.hpp"
#include "lstn/compiler.hpp"
#include "lstn/dispatcher.hpp"
#include "lstn/environment.hpp"
#include "lstn/errors.hpp"
#include "lstn/generator.hpp"
#include "lstn/labeled_value_set.hpp"
#include "lstn/plan.hpp"
#include "lstn/serialize.hpp"
