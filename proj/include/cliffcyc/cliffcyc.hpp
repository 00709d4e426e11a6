#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "cyclotomic.hpp"
#include "embedding.hpp"
#include "squareness.hpp"
#include "matrix.hpp"
#include "zeta.hpp"
#include "selmer.hpp"
#include "synthesis.hpp"
#include "amalgam.hpp"
