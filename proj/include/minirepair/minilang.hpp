#pragma once

#include "minirepair/minilang/ast.hpp"
#include "minirepair/minilang/errors.hpp"
#include "minirepair/minilang/interpreter.hpp"
#include "minirepair/minilang/parser.hpp"
#include "minirepair/minilang/printer.hpp"
#include "minirepair/minilang/test_suite.hpp"
#include "minirepair/minilang/typecheck.hpp"
