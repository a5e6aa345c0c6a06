#pragma once

#include "cayley/algebra.hpp"
#include "cayley/classify.hpp"
#include "cayley/coloring.hpp"
#include "cayley/core.hpp"
#include "cayley/graph.hpp"
#include "cayley/isomorphism.hpp"
#include "cayley/properties.hpp"
#include "cayley/rewriting.hpp"
#include "cayley/synthesis.hpp"
