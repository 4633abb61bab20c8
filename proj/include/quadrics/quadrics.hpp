#pragma once

#include "quadrics/classify.hpp"
#include "quadrics/ideal.hpp"
#include "quadrics/ideal_file.hpp"
#include "quadrics/invariants.hpp"
#include "quadrics/linalg.hpp"
#include "quadrics/monomial.hpp"
#include "quadrics/options.hpp"
#include "quadrics/parse.hpp"
#include "quadrics/polynomial.hpp"
#include "quadrics/rational.hpp"
#include "quadrics/report.hpp"
