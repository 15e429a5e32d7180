#pragma once

#include "tic/cascade.hpp"
#include "tic/csv.hpp"
#include "tic/error.hpp"
#include "tic/evaluation.hpp"
#include "tic/exact.hpp"
#include "tic/generators.hpp"
#include "tic/hypergraph.hpp"
#include "tic/ingest.hpp"
#include "tic/interventions.hpp"
#include "tic/io.hpp"
#include "tic/parallel.hpp"
#include "tic/probability_model.hpp"
#include "tic/rng.hpp"
#include "tic/sampler.hpp"
#include "tic/solvers.hpp"
#include "tic/temporal_network.hpp"
#include "tic/venues.hpp"
