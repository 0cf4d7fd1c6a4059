// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header.

#pragma once

#include "qes/errors.hpp"
#include "qes/potential.hpp"
#include "qes/polynomial.hpp"
#include "qes/quadrature.hpp"
#include "qes/jet.hpp"
#include "qes/normalize.hpp"
#include "qes/closed_form.hpp"
#include "qes/bethe.hpp"
#include "qes/oracle.hpp"
#include "qes/solver_n2.hpp"
#include "qes/solver_n3.hpp"
#include "qes/nonrel.hpp"
#include "qes/reference_tables.hpp"
#include "qes/errata.hpp"
#include "qes/verify.hpp"
