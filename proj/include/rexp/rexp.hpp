#pragma once

// Umbrella header for the whole library.

#include "rexp/adversary.hpp"
#include "rexp/baselines.hpp"
#include "rexp/ftrl.hpp"
#include "rexp/harness.hpp"
#include "rexp/hinge.hpp"
#include "rexp/libsvm.hpp"
#include "rexp/numfmt.hpp"
#include "rexp/regret.hpp"
#include "rexp/rescaled_exp.hpp"
#include "rexp/rng.hpp"
#include "rexp/selfcheck.hpp"
#include "rexp/synthetic.hpp"
#include "rexp/vec.hpp"
