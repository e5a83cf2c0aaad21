#pragma once

#include "latticeforge/catalog.hpp"
#include "latticeforge/dot.hpp"
#include "latticeforge/enumerate.hpp"
#include "latticeforge/errors.hpp"
#include "latticeforge/identities.hpp"
#include "latticeforge/isomorphism.hpp"
#include "latticeforge/kclosure.hpp"
#include "latticeforge/klat.hpp"
#include "latticeforge/lattice.hpp"
#include "latticeforge/lattice_io.hpp"
#include "latticeforge/pure_meet.hpp"
#include "latticeforge/structure.hpp"
#include "latticeforge/tensor.hpp"
#include "latticeforge/terms.hpp"
