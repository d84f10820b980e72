#pragma once

#include "ctcx/bounds.hpp"
#include "ctcx/classes.hpp"
#include "ctcx/disk.hpp"
#include "ctcx/errors.hpp"
#include "ctcx/series.hpp"
#include "ctcx/series_json.hpp"
#include "ctcx/suite.hpp"
#include "ctcx/synthesis.hpp"
