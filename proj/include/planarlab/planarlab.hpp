#ifndef PLANARLAB_PLANARLAB_HPP
#define PLANARLAB_PLANARLAB_HPP

#define PLANARLAB_VERSION "0.1.0"

#include "designs.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "intmath.hpp"
#include "irreducibility.hpp"
#include "parallel.hpp"
#include "planarity.hpp"
#include "poly.hpp"
#include "polytext.hpp"
#include "weil.hpp"

#endif  // PLANARLAB_PLANARLAB_HPP
