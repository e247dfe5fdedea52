#pragma once

#include "qheat/asymptotics.hpp"
#include "qheat/errors.hpp"
#include "qheat/harness.hpp"
#include "qheat/mellin.hpp"
#include "qheat/numerics.hpp"
#include "qheat/specfun.hpp"
#include "qheat/spectrum.hpp"
#include "qheat/traces.hpp"
