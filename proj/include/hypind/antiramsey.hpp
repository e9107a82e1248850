#pragma once

#include "hypind/antiramsey/coloring.hpp"
#include "hypind/antiramsey/conflict.hpp"
#include "hypind/antiramsey/finder.hpp"
