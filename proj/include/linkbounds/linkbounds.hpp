#pragma once

#include "linkbounds/census.hpp"
#include "linkbounds/corpus.hpp"
#include "linkbounds/error.hpp"
#include "linkbounds/evaluation.hpp"
#include "linkbounds/graph.hpp"
#include "linkbounds/hurwitz_zeta.hpp"
#include "linkbounds/powerlaw.hpp"
#include "linkbounds/predictors.hpp"
#include "linkbounds/synth.hpp"
#include "linkbounds/windowing.hpp"
