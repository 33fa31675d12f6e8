#pragma once

#include "errors.hpp"
#include "partition.hpp"
#include "elliptic.hpp"
#include "wfun.hpp"
#include "omega.hpp"
#include "series.hpp"
#include "verify.hpp"
