#pragma once
// Umbrella header.

#include "featnet/build.hpp"
#include "featnet/dynamics.hpp"
#include "featnet/estimation.hpp"
#include "featnet/experiments.hpp"
#include "featnet/graph.hpp"
#include "featnet/ingest.hpp"
#include "featnet/io.hpp"
#include "featnet/metrics.hpp"
#include "featnet/parallel.hpp"
#include "featnet/rng.hpp"
#include "featnet/similarity_index.hpp"
#include "featnet/types.hpp"
