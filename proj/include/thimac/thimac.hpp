#pragma once

#include "diagnostics.hpp"
#include "metamodel.hpp"
#include "parse.hpp"
#include "serialize.hpp"
#include "validate.hpp"
#include "eventize.hpp"
#include "dissipate.hpp"
#include "simulate.hpp"
#include "render.hpp"
#include "json_io.hpp"
