#pragma once

#include "paraholo/errors.hpp"
#include "paraholo/paracomplex.hpp"
#include "paraholo/dual.hpp"
#include "paraholo/expression.hpp"
#include "paraholo/parser.hpp"
#include "paraholo/tensor.hpp"
#include "paraholo/metric.hpp"
#include "paraholo/real_oracle.hpp"
#include "paraholo/connection.hpp"
#include "paraholo/curvature.hpp"
#include "paraholo/einstein.hpp"
#include "paraholo/polynomial.hpp"
#include "paraholo/lie_group.hpp"
#include "paraholo/report.hpp"
#include "paraholo/cli.hpp"
