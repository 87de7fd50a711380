#pragma once

#include "symdisc/cli.hpp"
#include "symdisc/config.hpp"
#include "symdisc/decompose.hpp"
#include "symdisc/discrimination.hpp"
#include "symdisc/errors.hpp"
#include "symdisc/group.hpp"
#include "symdisc/io.hpp"
#include "symdisc/linalg.hpp"
#include "symdisc/problems.hpp"
#include "symdisc/rep.hpp"
