// qbos.hpp
// Umbrella header.

#pragma once

#include "qbos/cases.hpp"
#include "qbos/closed_form.hpp"
#include "qbos/config_io.hpp"
#include "qbos/engine.hpp"
#include "qbos/equilibrium.hpp"
#include "qbos/linalg.hpp"
#include "qbos/report.hpp"
#include "qbos/strategy.hpp"
