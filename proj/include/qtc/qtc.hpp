#pragma once

#include "qtc/errors.hpp"
#include "qtc/field.hpp"
#include "qtc/poly.hpp"
#include "qtc/factor.hpp"
#include "qtc/linear_code.hpp"
#include "qtc/distance.hpp"
#include "qtc/constacyclic.hpp"
#include "qtc/qt.hpp"
#include "qtc/equivalence.hpp"
#include "qtc/tables.hpp"
#include "qtc/search.hpp"
