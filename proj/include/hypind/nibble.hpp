#pragma once

#include "hypind/nibble/basic.hpp"
#include "hypind/nibble/pipeline.hpp"
#include "hypind/nibble/report.hpp"
#include "hypind/nibble/schedule.hpp"
#include "hypind/nibble/semi_random.hpp"
