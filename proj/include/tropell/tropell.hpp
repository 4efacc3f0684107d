#pragma once

#include "tropell/errors.hpp"
#include "tropell/number.hpp"
#include "tropell/valued_element.hpp"
#include "tropell/polynomial.hpp"
#include "tropell/factored.hpp"
#include "tropell/expression.hpp"
#include "tropell/linalg.hpp"
#include "tropell/laplacian.hpp"
#include "tropell/skeleton.hpp"
#include "tropell/weierstrass.hpp"
#include "tropell/reduction.hpp"
#include "tropell/sl2.hpp"
#include "tropell/galois.hpp"
#include "tropell/io.hpp"
