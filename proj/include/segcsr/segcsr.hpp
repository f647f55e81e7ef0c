#pragma once

#include "segcsr/apps/betweenness.hpp"
#include "segcsr/apps/collaborative_filtering.hpp"
#include "segcsr/apps/label_propagation.hpp"
#include "segcsr/apps/pagerank.hpp"
#include "segcsr/clustering.hpp"
#include "segcsr/digest.hpp"
#include "segcsr/engine.hpp"
#include "segcsr/graph.hpp"
#include "segcsr/io.hpp"
#include "segcsr/rmat.hpp"
#include "segcsr/segmenting.hpp"
#include "segcsr/types.hpp"
