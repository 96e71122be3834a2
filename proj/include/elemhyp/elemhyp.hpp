// Umbrella header.
#pragma once

#include "elemhyp/basis.hpp"
#include "elemhyp/heun.hpp"
#include "elemhyp/hypergeom.hpp"
#include "elemhyp/mkz.hpp"
#include "elemhyp/numcore.hpp"
#include "elemhyp/polylog.hpp"
#include "elemhyp/report.hpp"
#include "elemhyp/verify.hpp"
