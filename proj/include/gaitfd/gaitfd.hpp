#pragma once

#include "gaitfd/assembly.hpp"
#include "gaitfd/errors.hpp"
#include "gaitfd/mesh.hpp"
#include "gaitfd/model.hpp"
#include "gaitfd/reference_tables.hpp"
#include "gaitfd/solver.hpp"
#include "gaitfd/tridiag.hpp"
