#pragma once

#include "affine.hpp"
#include "arrow.hpp"
#include "bracket.hpp"
#include "catalog.hpp"
#include "closures.hpp"
#include "code.hpp"
#include "error.hpp"
#include "genus.hpp"
#include "moves.hpp"
#include "parity.hpp"
#include "parity_bracket.hpp"
#include "poly.hpp"
#include "smoothing.hpp"
#include "virtuality.hpp"
