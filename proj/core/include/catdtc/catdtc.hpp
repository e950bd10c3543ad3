#pragma once

#include "catdtc/analytics.hpp"
#include "catdtc/circuit.hpp"
#include "catdtc/noise.hpp"
#include "catdtc/obs.hpp"
#include "catdtc/protocols.hpp"
#include "catdtc/qstate.hpp"
#include "catdtc/rng.hpp"
#include "catdtc/spectral.hpp"
