#pragma once
#include "uthl/core.hpp"
