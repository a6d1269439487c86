#pragma once

// Exact-arithmetic toolkit for 3-dimensional lattice polytopes: smoothness,
// central symmetry and integer-decomposition checks, and constructive
// coverings by lattice parallelepipeds and unimodular simplices with
// verifiable certificates.

#include "polycover/analysis.hpp"
#include "polycover/covering.hpp"
#include "polycover/generators.hpp"
#include "polycover/io.hpp"
#include "polycover/lattice.hpp"
#include "polycover/numeric.hpp"
#include "polycover/pieces.hpp"
#include "polycover/polygon.hpp"
#include "polycover/polytope.hpp"
#include "polycover/vec.hpp"
