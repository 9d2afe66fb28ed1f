#pragma once

#include "seqsynth/corpus.hpp"
#include "seqsynth/fidelity.hpp"
#include "seqsynth/generator.hpp"
#include "seqsynth/random.hpp"
#include "seqsynth/recsys.hpp"
#include "seqsynth/seqgraph.hpp"
