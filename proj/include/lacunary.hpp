#pragma once

#include "lacunary/automaton.hpp"
#include "lacunary/bits.hpp"
#include "lacunary/contfrac.hpp"
#include "lacunary/dyadic.hpp"
#include "lacunary/laurent_series.hpp"
#include "lacunary/oeis.hpp"
#include "lacunary/poly_json.hpp"
#include "lacunary/qseries.hpp"
#include "lacunary/ring.hpp"
#include "lacunary/sparse_poly.hpp"
#include "lacunary/stern.hpp"
