#pragma once

#include "relk2/report.hpp"
#include "relk2/verify.hpp"
