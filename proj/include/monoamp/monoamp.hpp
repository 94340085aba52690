#pragma once

#include "amplify.hpp"
#include "boolfn.hpp"
#include "distance.hpp"
#include "errors.hpp"
#include "point.hpp"
#include "rng.hpp"
#include "table_io.hpp"
#include "testers.hpp"
#include "tribes.hpp"
