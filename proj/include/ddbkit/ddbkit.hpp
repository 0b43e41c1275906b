#pragma once

#include "ddbkit/classifier.hpp"
#include "ddbkit/error.hpp"
#include "ddbkit/gf2_matrix.hpp"
#include "ddbkit/glue.hpp"
#include "ddbkit/graded_group.hpp"
#include "ddbkit/mod2_poly.hpp"
#include "ddbkit/quillen.hpp"
#include "ddbkit/smith.hpp"
#include "ddbkit/steenrod.hpp"
