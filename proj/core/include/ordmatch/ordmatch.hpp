#pragma once

#include "ordmatch/analytics.hpp"
#include "ordmatch/distributions.hpp"
#include "ordmatch/errors.hpp"
#include "ordmatch/estimator.hpp"
#include "ordmatch/mechanisms.hpp"
#include "ordmatch/model.hpp"
#include "ordmatch/opt.hpp"
#include "ordmatch/random_stream.hpp"
