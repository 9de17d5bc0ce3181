#pragma once

#include "tsnet/baselines/baselines.hpp"
#include "tsnet/community/detect.hpp"
#include "tsnet/datasets.hpp"
#include "tsnet/distances.hpp"
#include "tsnet/errors.hpp"
#include "tsnet/evaluation.hpp"
#include "tsnet/graph.hpp"
#include "tsnet/matrix_cache.hpp"
#include "tsnet/partition.hpp"
#include "tsnet/rng.hpp"
#include "tsnet/series.hpp"
