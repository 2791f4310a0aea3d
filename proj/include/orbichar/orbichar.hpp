#ifndef ORBICHAR_ORBICHAR_HPP
#define ORBICHAR_ORBICHAR_HPP

#include "orbichar/characteristics.hpp"
#include "orbichar/classify.hpp"
#include "orbichar/constructions.hpp"
#include "orbichar/errors.hpp"
#include "orbichar/finite_group.hpp"
#include "orbichar/gamma.hpp"
#include "orbichar/json_io.hpp"
#include "orbichar/mirrored.hpp"
#include "orbichar/rational.hpp"
#include "orbichar/sectors.hpp"
#include "orbichar/signature.hpp"
#include "orbichar/worked_examples.hpp"

#endif
