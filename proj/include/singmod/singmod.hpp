#pragma once

// Everything at once.
#include "singmod/acceptance.hpp"
#include "singmod/arith.hpp"
#include "singmod/binary_forms.hpp"
#include "singmod/class_polynomial.hpp"
#include "singmod/cm_reduction.hpp"
#include "singmod/corpus.hpp"
#include "singmod/error.hpp"
#include "singmod/finite_field.hpp"
#include "singmod/parallel.hpp"
#include "singmod/qseries.hpp"
#include "singmod/quad_poly.hpp"
#include "singmod/quaternion.hpp"
#include "singmod/ternary_forms.hpp"
