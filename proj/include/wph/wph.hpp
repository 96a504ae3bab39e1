#pragma once

// Umbrella header: exact weighted simplicial homology and persistence over
// the Euclidean domains Z and Q[x].

#include "wph/bockstein.hpp"
#include "wph/boundary.hpp"
#include "wph/builders.hpp"
#include "wph/complex.hpp"
#include "wph/homology.hpp"
#include "wph/io.hpp"
#include "wph/lattice.hpp"
#include "wph/matrix.hpp"
#include "wph/mayer_vietoris.hpp"
#include "wph/module.hpp"
#include "wph/monomial.hpp"
#include "wph/poly.hpp"
#include "wph/random_gen.hpp"
#include "wph/ring.hpp"
#include "wph/snf.hpp"
